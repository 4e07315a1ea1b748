#include <random>

#include "doctest.h"
#include "dmw/catalog.hpp"
#include "dmw/rules.hpp"
#include "dmw/sequent.hpp"
#include "dmw/validity.hpp"

using namespace dmw;

TEST_CASE("sequents") {
  const Sequent a = parse_sequent("y, x |> z");
  const Sequent b = parse_sequent("x, y, x |- z");
  CHECK(a == b);
  CHECK(a.premises.size() == 2);
  CHECK(parse_sequent(to_string(a)) == a);
  CHECK_THROWS(parse_sequent("x ~= ~x |- x"));
}

TEST_CASE("identity proofs") {
  const auto cfg = ecq_calculus();
  const auto r = prove(cfg, parse_sequent("x & ~y |> x & ~y"));
  REQUIRE(r.proof);
  CHECK(r.proof->depth() == 0);
  CHECK_NOTHROW(validate_proof(cfg, *r.proof));
  const std::vector<LogicMatrix> all = {catalog("DMm1"), catalog("A1"), catalog("M8")};
  CHECK(check_soundness(cfg, *r.proof, all));
}

TEST_CASE("ECQ axiom instance") {
  const auto cfg = ecq_calculus();
  const auto r = prove(cfg, parse_sequent("(x & ~x) | (y & ~y) |> z"));
  REQUIRE(r.proof);
  CHECK_NOTHROW(validate_proof(cfg, *r.proof));
  bool uses_axiom = false;
  for (const auto& s : r.proof->steps) uses_axiom = uses_axiom || s.rule == ProofRule::axiom;
  CHECK(uses_axiom);
  const std::vector<LogicMatrix> ms = {catalog("DMm1 x BAm1")};
  CHECK(check_soundness(cfg, *r.proof, ms));
}

TEST_CASE("unprovable sequents are not proved") {
  const auto cfg = ecq_calculus();
  // x ▷ y fails in DMm1 x BAm1, so no sound proof exists
  const auto r = prove(cfg, parse_sequent("x |> y"));
  CHECK_FALSE(r.proof);
}

TEST_CASE("PCP steps are used") {
  const auto cfg = ecq_calculus();
  // three contradictions need the 2-PCP on top of the two-case axiom
  const auto r = prove(cfg, parse_sequent("(x & ~x) | (y & ~y) | (z & ~z) |> u"));
  REQUIRE(r.proof);
  CHECK_NOTHROW(validate_proof(cfg, *r.proof));
  const std::vector<LogicMatrix> ms = {catalog("DMm1 x BAm1")};
  CHECK(check_soundness(cfg, *r.proof, ms));
  CHECK_FALSE(pretty_print(*r.proof).empty());
}

TEST_CASE("tampered proofs are rejected") {
  const auto cfg = ecq_calculus();
  auto r = prove(cfg, parse_sequent("(x & ~x) | (y & ~y) |> z"));
  REQUIRE(r.proof);
  Proof p = *r.proof;
  p.steps.back().sequent.conclusion = Formula::var("u");
  CHECK_THROWS_AS(validate_proof(cfg, p), InvalidProofError);
  Proof q;
  ProofStep bogus;
  bogus.rule = ProofRule::base;
  bogus.sequent = parse_sequent("x |> y");
  q.steps.push_back(bogus);
  CHECK_THROWS_AS(validate_proof(cfg, q), InvalidProofError);
}

TEST_CASE("K-minus calculus proofs hold in M8") {
  const auto cfg = kminus_calculus();
  std::mt19937_64 rng(21);
  const std::vector<LogicMatrix> m8 = {catalog("M8")};
  int proved = 0;
  for (int i = 0; i < 200; ++i) {
    const Sequent s = random_sequent(rng, 3, 2, 2);
    const auto r = prove(cfg, s);
    if (!r.proof) continue;
    ++proved;
    CHECK_MESSAGE(check_soundness(cfg, *r.proof, m8), to_string(s));
  }
  CHECK(proved > 0);
}

TEST_CASE("ABF calculus proofs hold in Q4") {
  const auto cfg = abf_calculus();
  std::mt19937_64 rng(22);
  const std::vector<LogicMatrix> q4 = {catalog("Q4")};
  int proved = 0, attempts = 0;
  while (proved < 1000 && attempts < 20000) {
    ++attempts;
    const Sequent s = random_sequent(rng, 3, 2, 2);
    if (!holds(s.as_rule(), q4[0])) continue;
    const auto r = prove(cfg, s);
    if (!r.proof) continue;
    ++proved;
    CHECK_MESSAGE(check_soundness(cfg, *r.proof, q4), to_string(s));
  }
  CHECK(proved == 1000);
}

TEST_CASE("random formulas are deterministic") {
  std::mt19937_64 a(1), b(1);
  for (int i = 0; i < 50; ++i) CHECK(random_formula(a, 3, 3) == random_formula(b, 3, 3));
}

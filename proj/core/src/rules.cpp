#include "dmw/rules.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace dmw {

namespace {

Formula f(std::string_view s) { return parse_formula(s); }
Rule r(std::string_view s) { return parse_rule(s); }

Formula nth_var(int i) {
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  if (i < 6) return Formula::var(base[i]);
  return Formula::var("x" + std::to_string(i - 5));
}

Formula indexed(const char* stem, int i) { return Formula::var(stem + std::to_string(i)); }

Formula contradiction_disjunction(int k) {
  if (k < 1) throw std::invalid_argument("family index must be at least 1");
  std::vector<Formula> parts;
  for (int i = 1; i <= k; ++i) parts.push_back(indexed("x", i) & ~indexed("x", i));
  return disj_all(parts);
}

}  // namespace

Rule disjunctive_variant(const Rule& rule) {
  if (!rule.equations.empty())
    throw std::invalid_argument("disjunctive variant is undefined for rules with equations");
  const auto used = rule.variables();
  const Formula x = Formula::var(fresh_variable(used));
  std::vector<Formula> prem;
  for (Formula p : rule.premises) prem.push_back(p | x);
  return Rule(std::move(prem), rule.conclusion | x);
}

Formula alpha(std::span<const Formula> psis) {
  if (psis.empty()) throw std::invalid_argument("alpha needs at least one argument");
  Formula acc = psis.back() | ~psis.back();
  for (std::size_t i = psis.size() - 1; i-- > 0;) acc = (psis[i] | ~psis[i]) & acc;
  return acc;
}

Rule n_adjunction(int n) {
  if (n < 1) throw std::invalid_argument("n-adjunction needs n >= 1");
  const int k = n + 1;
  std::vector<Formula> xs;
  for (int i = 0; i < k; ++i) xs.push_back(nth_var(i));
  std::vector<Formula> prem;
  for (int i = 0; i < k; ++i) {
    std::vector<Formula> part;
    for (int j = 0; j < n; ++j) part.push_back(xs[static_cast<std::size_t>((i + j) % k)]);
    prem.push_back(conj_all(part));
  }
  return Rule(std::move(prem), conj_all(xs));
}

Rule lem() { return r("|- x | ~x"); }
Rule disjunctive_syllogism() { return r("x, ~x | y |- y"); }
Rule abf_rule() { return r("x | y, ~x | y |- (x & ~x) | y"); }

Rule ecq_rule(int k) { return Rule({contradiction_disjunction(k)}, f("y")); }

Rule kminus_rule(int k) {
  return Rule({contradiction_disjunction(k) | f("y"), f("~y | z")}, f("z"));
}

Formula protoimplication_delta() { return f("(~x | y) & (~x | x) & (~y | y)"); }

namespace {

const std::vector<std::pair<std::string, std::string>>& separating_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"BAm1", "x |- y"},
      {"A1", "|- x | ~x"},
      {"Km1", "x |- y | ~y"},
      {"Pm1", "x & ~x |- y"},
      {"DMm1", "x & ~x |- y | ~y"},
      {"Q4", "x & ~x, y & ~y |- (x | ~x) & (y | ~y)"},
      {"Q7", "x, y |- ~x | ~y | x & y"},
      {"Q8", "x & ~x, y |- x & y | ~y"},
      {"Q9", "x & ~x & z, y & ~y |- (x | ~x | z) & (y | ~y | ~z)"},
      {"BAm1 (x) BAm1", "x, ~x |- x & ~x"},
      {"BAm1 (x) Pm1", "x & ~x, y, ~y |- y & ~y"},
      {"BAm1 (x) Km1", "x, ~x, y | ~y |- x & (~x | y | ~y)"},
      {"BAm1 (x) DMm1", "x & y, x | ~x, y & ~y |- (x | ~x) & y & ~y"},
      {"Km1 (x) Km1", "x & z, y & ~z |- x & y | ~(x & y)"},
      {"Km1 (x) Pm1", "x, ~x & y & ~y |- x & (y | ~y)"},
      {"Km1 (x) DMm1", "x & z, y & ~y & ~z |- (x | ~x) & (y | ~y)"},
      {"Pm1 (x) Pm1", "x & y, x & ~x, y & ~y |- x & ~x & y & ~y"},
      {"Pm1 (x) DMm1", "x & ~x & y, y & ~y & z & ~z |- (x | ~x) & z"},
      {"DMm1 (x) DMm1", "x & ~x & z & ~z, y & ~y & z & ~z |- (x | ~x) & (y | ~y)"},
  };
  return table;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out += c;
  return out;
}

// Rank in the order BA < K < P < DM used by the table; -1 for non-base names.
int base_rank(const std::string& s) {
  if (s == "BA" || s == "BAm" || s == "BAm1") return 0;
  if (s == "K" || s == "Km" || s == "Km1") return 1;
  if (s == "P" || s == "Pm" || s == "Pm1") return 2;
  if (s == "DM" || s == "DMm" || s == "DMm1") return 3;
  return -1;
}

const char* base_name(int rank) {
  static const char* names[] = {"BAm1", "Km1", "Pm1", "DMm1"};
  return names[rank];
}

}  // namespace

std::string separating_key(std::string_view structure) {
  std::string s = strip_spaces(structure);
  for (std::size_t p; (p = s.find("⊗")) != std::string::npos;) s.replace(p, 3, "(x)");
  const auto sep = s.find("(x)");
  if (sep == std::string::npos) {
    const int rank = base_rank(s);
    if (rank >= 0) return base_name(rank);
    for (const auto& [key, text] : separating_table())
      if (key == s) return key;
    throw UnknownRuleError("no separating rule for structure '" + std::string(structure) + "'");
  }
  int a = base_rank(s.substr(0, sep));
  int b = base_rank(s.substr(sep + 3));
  if (a < 0 || b < 0)
    throw UnknownRuleError("no separating rule for structure '" + std::string(structure) + "'");
  if (a > b) std::swap(a, b);
  return std::string(base_name(a)) + " (x) " + base_name(b);
}

Rule separating_rule(std::string_view structure) {
  const std::string key = separating_key(structure);
  for (const auto& [k, text] : separating_table())
    if (k == key) return r(text);
  throw UnknownRuleError("no separating rule for structure '" + std::string(structure) + "'");
}

namespace {

// Splits "name(arg)" into name and argument; the argument is empty when absent.
std::pair<std::string, std::string> split_call(std::string_view s) {
  const std::string t = strip_spaces(s);
  const auto open = t.find('(');
  if (open == std::string::npos) return {t, {}};
  if (t.back() != ')') throw UnknownRuleError("malformed rule family '" + std::string(s) + "'");
  return {t.substr(0, open), t.substr(open + 1, t.size() - open - 2)};
}

int int_arg(const std::string& arg, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
  if (ec != std::errc() || p != arg.data() + arg.size() || v < 1)
    throw UnknownRuleError("bad parameter in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

std::vector<Rule> catalog_rules(std::string_view name) {
  const auto [head, arg] = split_call(name);
  if (head == "n_adjunction") return {n_adjunction(arg.empty() ? 1 : int_arg(arg, name))};
  if (head == "ecq" || head == "kminus") {
    const int k = arg.empty() ? 1 : int_arg(arg, name);
    std::vector<Rule> out;
    for (int i = 1; i <= k; ++i) out.push_back(head == "ecq" ? ecq_rule(i) : kminus_rule(i));
    return out;
  }
  if (head == "separating") {
    if (!arg.empty()) {
      // the argument may itself contain "(x)", so take everything inside the outer parentheses
      const std::string inner = strip_spaces(name).substr(head.size() + 1);
      return {separating_rule(inner.substr(0, inner.size() - 1))};
    }
    std::vector<Rule> out;
    for (const auto& [k, text] : separating_table()) out.push_back(r(text));
    return out;
  }
  if (!arg.empty()) throw UnknownRuleError("rule family '" + head + "' takes no parameter");
  if (head == "lem") return {lem()};
  if (head == "lp_axioms") return {lem(), r("x |- x & (y | ~y)")};
  if (head == "k_axiom") return {r("(x & ~x) | y |- y")};
  if (head == "ko_axiom") return {r("((x & ~x) & z) | u |- ((y | ~y) & z) | u")};
  if (head == "ko_axiom_alt") return {r("((x & ~x) | z) & u |- ((y | ~y) | z) & u")};
  if (head == "cl_axioms") return {lem(), r("x |- x & (y | ~y)"), r("(x & ~x) | y |- y")};
  if (head == "disjunctive_syllogism") return {disjunctive_syllogism()};
  if (head == "truth_eq_rules") return {lem(), r("x, ((x | ~x) & y) | z |- (x & y) | z")};
  if (head == "protoimpl_delta") {
    const Formula d = protoimplication_delta();
    const Formula dxx = substitute(d, {{variable_index("y"), f("x")}});
    return {Rule({}, dxx), Rule({f("x"), d}, f("y"))};
  }
  if (head == "weak_splitting")
    return {r("x & ~x |- y | ~y"), lem(), r("x |- y | ~y"), r("x & ~x |- y")};
  if (head == "abf") return {n_adjunction(2), lem(), abf_rule()};
  throw UnknownRuleError("unknown rule family '" + std::string(name) + "'");
}

std::vector<std::string> rule_catalog_names() {
  return {"n_adjunction(n)", "lem",        "lp_axioms",      "k_axiom",
          "ko_axiom",        "ko_axiom_alt", "cl_axioms",    "disjunctive_syllogism",
          "ecq(k)",          "kminus(k)",  "separating(S)",  "separating",
          "truth_eq_rules",  "protoimpl_delta", "weak_splitting", "abf"};
}

}  // namespace dmw

#include "dmw/io.hpp"

#include <fstream>
#include <sstream>

#include "dmw/catalog.hpp"
#include "json.hpp"

namespace dmw {

namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& j, int indent) { return j.dump(indent) + "\n"; }

Json table(const FiniteLattice& l, std::span<const Elem> flat) {
  Json rows = Json::array();
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(flat[a * n + b]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json lattice_json(const FiniteLattice& l) {
  Json j;
  j["size"] = l.size();
  j["meet"] = table(l, l.meet_table());
  j["join"] = table(l, l.join_table());
  j["neg"] = std::vector<Elem>(l.neg_table().begin(), l.neg_table().end());
  j["labels"] = l.labels();
  return j;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

FiniteLattice lattice_of(const Json& j) {
  const auto n = field<std::size_t>(j, "size");
  check_size(n, "lattice in JSON");
  auto flatten = [&](const char* key) {
    const auto rows = field<std::vector<std::vector<std::size_t>>>(j, key);
    if (rows.size() != n) throw FormatError(std::string("\"") + key + "\" must have size rows");
    std::vector<Elem> out;
    for (const auto& row : rows) {
      if (row.size() != n) throw FormatError(std::string("\"") + key + "\" must have size columns");
      for (std::size_t v : row) {
        if (v >= n) throw FormatError(std::string("\"") + key + "\" entry out of range");
        out.push_back(static_cast<Elem>(v));
      }
    }
    return out;
  };
  auto meet = flatten("meet");
  auto join = flatten("join");
  std::vector<Elem> neg;
  for (std::size_t v : field<std::vector<std::size_t>>(j, "neg")) {
    if (v >= n) throw FormatError("\"neg\" entry out of range");
    neg.push_back(static_cast<Elem>(v));
  }
  if (neg.size() != n) throw FormatError("\"neg\" must have size entries");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = field<std::vector<std::string>>(j, "labels");
  return FiniteLattice(n, std::move(meet), std::move(join), std::move(neg), std::move(labels));
}

Json matrix_json(const LogicMatrix& m) {
  Json j = lattice_json(m.lattice);
  j["designated"] = m.designated.to_vector();
  if (!m.name.empty()) j["name"] = m.name;
  return j;
}

LogicMatrix matrix_of(const Json& j) {
  FiniteLattice l = lattice_of(j);
  ElemSet f(l.size());
  for (std::size_t v : field<std::vector<std::size_t>>(j, "designated")) {
    if (v >= l.size()) throw FormatError("\"designated\" entry out of range");
    f.set(static_cast<Elem>(v));
  }
  std::string name;
  if (j.contains("name")) name = field<std::string>(j, "name");
  return LogicMatrix(std::move(l), std::move(f), std::move(name));
}

Json valuation_json(const Valuation& v, const FiniteLattice& l) {
  Json j = Json::object();
  for (const auto& [var, e] : v.assignment) j[to_string(Formula::var(var))] = l.label(e);
  return j;
}

Json formulas_json(std::span<const Formula> fs) {
  Json j = Json::array();
  for (Formula f : fs) j.push_back(to_string(f));
  return j;
}

Json certificate_json(const ModelCertificate& c, const LogicMatrix& m, const Logic& k) {
  Json j;
  Json gens = Json::array();
  for (Elem g : c.generators) gens.push_back(m.lattice.label(g));
  j["generators"] = gens;
  Json rels = Json::array();
  for (const auto& r : c.relations) {
    Json rj;
    const auto& target = k.matrices[r.factor];
    rj["factor"] = target.name.empty() ? std::to_string(r.factor) : target.name;
    Json images = Json::array();
    for (Elem e : r.images) images.push_back(target.lattice.label(e));
    rj["images"] = images;
    Json covers = Json::array();
    for (Elem e : r.covers) covers.push_back(m.lattice.label(e));
    rj["covers"] = covers;
    rels.push_back(std::move(rj));
  }
  j["relations"] = rels;
  return j;
}

std::string matrix_label(const LogicMatrix& m, std::size_t i) {
  return m.name.empty() ? "#" + std::to_string(i) : m.name;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Transitive reduction of a strict order given as a predicate.
template <class Less>
std::vector<std::pair<std::size_t, std::size_t>> hasse(std::size_t n, Less less) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !less(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c)
        if (c != a && c != b && less(a, c) && less(c, b)) cover = false;
      if (cover) edges.emplace_back(a, b);
    }
  return edges;
}

}  // namespace

std::string lattice_to_json(const FiniteLattice& l, int indent) { return dump(lattice_json(l), indent); }

FiniteLattice lattice_from_json(std::string_view text) { return lattice_of(parse(text)); }

std::string matrix_to_json(const LogicMatrix& m, int indent) { return dump(matrix_json(m), indent); }

LogicMatrix matrix_from_json(std::string_view text) { return matrix_of(parse(text)); }

std::string lattice_to_dot(const FiniteLattice& l, std::string_view graph_name) {
  return matrix_to_dot(LogicMatrix(l, ElemSet(l.size())), graph_name);
}

std::string matrix_to_dot(const LogicMatrix& m, std::string_view graph_name) {
  const auto& l = m.lattice;
  std::ostringstream out;
  out << "digraph " << quote(graph_name) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (std::size_t a = 0; a < l.size(); ++a) {
    out << "  n" << a << " [label=" << quote(l.label(static_cast<Elem>(a)));
    if (m.is_designated(static_cast<Elem>(a))) out << ", style=filled, fillcolor=gray70";
    out << "];\n";
  }
  for (auto [a, b] : hasse(l.size(), [&](std::size_t x, std::size_t y) {
         return l.leq(static_cast<Elem>(x), static_cast<Elem>(y));
       }))
    out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

Logic logic_from_json(std::string_view text) {
  const Json j = parse(text);
  if (!j.is_object() || !j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
    throw FormatError("a logic file needs a non-empty \"matrices\" array");
  std::vector<LogicMatrix> ms;
  for (const auto& entry : j["matrices"]) {
    if (entry.is_string()) {
      LogicMatrix m = catalog(entry.get<std::string>());
      if (m.name.empty()) m.name = entry.get<std::string>();
      ms.push_back(std::move(m));
    } else {
      ms.push_back(matrix_of(entry));
    }
  }
  std::string name;
  if (j.contains("name")) name = field<std::string>(j, "name");
  return Logic(std::move(ms), std::move(name));
}

std::string validity_to_json(const Rule& r, const LogicMatrix& m, const ValidityResult& v, int indent) {
  Json j;
  j["rule"] = to_string(r);
  j["matrix"] = m.name;
  j["valid"] = v.valid;
  if (v.counterexample) j["counterexample"] = valuation_json(*v.counterexample, m.lattice);
  return dump(j, indent);
}

std::string derivation_to_json(const Rule& r, const Logic& l, const Derivation& d, int indent) {
  Json j;
  j["rule"] = to_string(r);
  j["logic"] = l.name;
  j["valid"] = d.valid;
  if (d.matrix) {
    const auto& m = l.matrices[*d.matrix];
    j["failing_matrix"] = matrix_label(m, *d.matrix);
    if (d.counterexample) j["counterexample"] = valuation_json(*d.counterexample, m.lattice);
  }
  return dump(j, indent);
}

std::string leq_to_json(const Logic& l1, const Logic& l2, const LeqVerdict& v, int indent) {
  Json j;
  j["weaker"] = l1.name;
  j["stronger"] = l2.name;
  j["verdict"] = verdict_name(v.verdict);
  j["factors_needed"] = v.factors_needed;
  if (v.rule) j["separating_rule"] = to_string(*v.rule);
  if (v.failing_generator) {
    const auto& m = l2.matrices[*v.failing_generator];
    j["failing_generator"] = matrix_label(m, *v.failing_generator);
    if (v.counterexample) j["counterexample"] = valuation_json(*v.counterexample, m.lattice);
  }
  if (!v.certificates.empty()) {
    Json certs = Json::array();
    for (std::size_t i = 0; i < v.certificates.size(); ++i) {
      Json c = certificate_json(v.certificates[i], l2.matrices[i], l1);
      c["generator"] = matrix_label(l2.matrices[i], i);
      certs.push_back(std::move(c));
    }
    j["certificates"] = certs;
  }
  return dump(j, indent);
}

std::string model_check_to_json(const LogicMatrix& m, const Logic& k, const ModelCheck& c, int indent) {
  Json j;
  j["matrix"] = m.name;
  j["logic"] = k.name;
  j["is_model"] = c.is_model;
  if (c.certificate) j["certificate"] = certificate_json(*c.certificate, m, k);
  if (c.rule) j["separating_rule"] = to_string(*c.rule);
  if (c.counterexample) j["counterexample"] = valuation_json(*c.counterexample, m.lattice);
  return dump(j, indent);
}

std::string pcp_to_json(const Logic& l, int n, const PcpVerdict& v, int indent) {
  Json j;
  j["logic"] = l.name;
  j["n"] = n;
  j["holds_on_pool"] = v.holds;
  j["instances_checked"] = v.instances_checked;
  if (v.violation) {
    Json w;
    w["gamma"] = formulas_json(v.violation->gamma);
    w["phis"] = formulas_json(v.violation->phis);
    w["psi"] = to_string(v.violation->psi);
    j["violation"] = w;
  }
  if (v.matrix) {
    const auto& m = l.matrices[*v.matrix];
    j["matrix"] = matrix_label(m, *v.matrix);
    if (v.counterexample) j["counterexample"] = valuation_json(*v.counterexample, m.lattice);
  }
  return dump(j, indent);
}

std::string proof_to_json(const Proof& p, int indent) {
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    Json j;
    j["rule"] = proof_rule_name(s.rule);
    j["sequent"] = to_string(s.sequent);
    j["premises"] = s.children;
    if (s.rule == ProofRule::axiom) {
      j["axiom"] = s.axiom;
      Json sub = Json::object();
      for (const auto& [v, f] : s.substitution) sub[to_string(Formula::var(v))] = to_string(f);
      j["substitution"] = sub;
    }
    if (s.rule == ProofRule::cut) j["cut_formula"] = to_string(s.cut_formula);
    if (s.rule == ProofRule::pcp) j["cases"] = formulas_json(s.cases);
    steps.push_back(std::move(j));
  }
  Json out;
  out["root"] = p.steps.empty() ? Json() : Json(p.steps.size() - 1);
  out["steps"] = steps;
  return dump(out, indent);
}

std::string hierarchy_to_dot(const HierarchyLevel& level) {
  const auto& irr = level.irreducible;
  std::ostringstream out;
  out << "digraph " << quote(std::string(level_kind_name(level.kind)) + std::to_string(level.n))
      << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t a = 0; a < irr.size(); ++a)
    out << "  n" << a << " [label=" << quote(level.classes[irr[a]].name) << "];\n";
  for (auto [a, b] : hasse(irr.size(), [&](std::size_t x, std::size_t y) { return level.hss[irr[x]][irr[y]]; }))
    out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string logic_lattice_to_dot(const LogicLattice& lat) {
  std::ostringstream out;
  out << "digraph logics {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t a = 0; a < lat.families.size(); ++a) out << "  n" << a << " [label=" << quote(lat.names[a]) << "];\n";
  for (auto [a, b] : lat.covers) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string hierarchy_report_json(const HierarchyLevel& level, const LogicLattice& lat, int indent) {
  Json j;
  j["kind"] = level_kind_name(level.kind);
  j["n"] = level.n;
  Json classes = Json::array();
  for (std::size_t i = 0; i < level.classes.size(); ++i) {
    Json c;
    c["name"] = level.classes[i].name;
    c["size"] = level.classes[i].matrix.size();
    c["logic_class"] = level.logic_class_of[i];
    Json ups = Json::array();
    for (std::size_t k = 0; k < level.classes.size(); ++k)
      if (k != i && level.hss[i][k]) ups.push_back(level.classes[k].name);
    c["hss_above"] = ups;
    classes.push_back(std::move(c));
  }
  j["classes"] = classes;
  Json irr = Json::array();
  for (std::size_t i : lat.irreducible) irr.push_back(level.classes[i].name);
  j["irreducible"] = irr;
  Json seps = Json::array();
  for (const auto& s : lat.separating) {
    Json e;
    e["structure"] = level.classes[lat.irreducible[s.node]].name;
    e["rule"] = to_string(s.rule);
    seps.push_back(std::move(e));
  }
  j["separating_rules"] = seps;
  j["logics"] = lat.names;
  Json covers = Json::array();
  for (auto [a, b] : lat.covers) covers.push_back(Json::array({lat.names[a], lat.names[b]}));
  j["covers"] = covers;
  j["is_lattice"] = lat.is_lattice;
  j["distributive"] = lat.distributive;
  return dump(j, indent);
}

std::string separating_report_json(const HierarchyLevel& level, const SeparatingReport& r, int indent) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["structure"] = row.structure;
    j["rule"] = row.rule;
    j["fails_in_own"] = row.fails_in_own;
    if (row.own_counterexample) {
      const std::size_t i = level.find(row.structure);
      if (i != HierarchyLevel::npos) j["counterexample"] = valuation_json(*row.own_counterexample, level.classes[i].matrix.lattice);
    }
    j["checked"] = row.checked;
    j["offending"] = row.offending;
    j["pass"] = row.pass();
    rows.push_back(std::move(j));
  }
  Json out;
  out["rows"] = rows;
  out["pass"] = r.pass();
  return dump(out, indent);
}

std::string axiomatization_to_json(const AxiomatizationReport& r, int indent) {
  auto rules = [](const std::vector<Rule>& rs) {
    Json a = Json::array();
    for (const auto& x : rs) a.push_back(to_string(x));
    return a;
  };
  Json j;
  j["target"] = r.target;
  j["excluded_minimal"] = r.excluded_minimal;
  j["separating_used"] = rules(r.separating_used);
  j["output"] = rules(r.output);
  j["transcript"] = r.transcript;
  j["verified"] = r.verified;
  return dump(j, indent);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

}  // namespace dmw

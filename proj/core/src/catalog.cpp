#include "dmw/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <mutex>

namespace dmw {

namespace {

LogicMatrix dm_sub(std::initializer_list<Elem> universe, std::initializer_list<Elem> designated,
                   std::string name) {
  const FiniteLattice dm = build_dm1();
  LogicMatrix ambient(dm, ElemSet(4, designated));
  LogicMatrix m = restrict_to(ambient, ElemSet(4, universe));
  m.name = std::move(name);
  return m;
}

}  // namespace

LogicMatrix dmm1() { return LogicMatrix(build_dm1(), ElemSet(4, {dm1::t, dm1::b}), "DMm1"); }
LogicMatrix pm1() { return dm_sub({dm1::f, dm1::b, dm1::t}, {dm1::t, dm1::b}, "Pm1"); }
LogicMatrix km1() { return dm_sub({dm1::f, dm1::n, dm1::t}, {dm1::t, dm1::b}, "Km1"); }
LogicMatrix bam1() { return dm_sub({dm1::f, dm1::t}, {dm1::t, dm1::b}, "BAm1"); }
LogicMatrix a1() { return dm_sub({dm1::n}, {dm1::t, dm1::b}, "A1"); }
LogicMatrix b1() { return dm_sub({dm1::b}, {dm1::t, dm1::b}, "B1"); }

namespace {

// A structure drawn as a Hasse diagram: nodes with plane coordinates, edges
// between covering pairs, and negation given by reflection in the horizontal
// axis through the middle of the drawing.
struct Drawing {
  std::vector<std::pair<std::string, std::pair<int, int>>> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
};

Drawing grid9() {
  return {{{"0", {0, 0}},
           {"11", {-1, 1}},
           {"12", {1, 1}},
           {"21", {-2, 2}},
           {"22", {0, 2}},
           {"23", {2, 2}},
           {"31", {-1, 3}},
           {"32", {1, 3}},
           {"41", {0, 4}}},
          {{"0", "11"},
           {"11", "21"},
           {"12", "22"},
           {"22", "31"},
           {"23", "32"},
           {"32", "41"},
           {"21", "31"},
           {"31", "41"},
           {"11", "22"},
           {"22", "32"},
           {"0", "12"},
           {"12", "23"}}};
}

Drawing grid8() {
  Drawing d = grid9();
  std::erase_if(d.nodes, [](const auto& n) { return n.first == "23"; });
  std::erase_if(d.edges, [](const auto& e) { return e.first == "23" || e.second == "23"; });
  return d;
}

Drawing grid7() {
  Drawing d = grid8();
  std::erase_if(d.nodes, [](const auto& n) { return n.first == "21"; });
  std::erase_if(d.edges, [](const auto& e) { return e.first == "21" || e.second == "21"; });
  return d;
}

LogicMatrix realize_drawing(const Drawing& d, const std::vector<std::string>& designated,
                            const std::string& name) {
  const std::size_t n = d.nodes.size();
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < n; ++i)
      if (d.nodes[i].first == id) return static_cast<Elem>(i);
    throw std::logic_error("drawing references unknown node " + id);
  };
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [p, q] : d.edges) {
    Elem a = index_of(p), b = index_of(q);
    if (d.nodes[a].second.second > d.nodes[b].second.second) std::swap(a, b);
    le[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  int ymin = d.nodes[0].second.second, ymax = ymin;
  for (const auto& nd : d.nodes) {
    ymin = std::min(ymin, nd.second.second);
    ymax = std::max(ymax, nd.second.second);
  }
  std::vector<Elem> neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = d.nodes[i].second;
    const int ry = ymin + ymax - y;
    bool found = false;
    for (std::size_t j = 0; j < n; ++j)
      if (d.nodes[j].second == std::make_pair(x, ry)) {
        neg[i] = static_cast<Elem>(j);
        found = true;
      }
    if (!found) throw std::logic_error("drawing is not symmetric under reflection");
  }
  std::vector<Elem> m(n * n), j(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int glb = -1, lub = -1;
      for (std::size_t c = 0; c < n; ++c) {
        if (le[c][a] && le[c][b] && (glb < 0 || le[static_cast<std::size_t>(glb)][c])) glb = static_cast<int>(c);
        if (le[a][c] && le[b][c] && (lub < 0 || le[c][static_cast<std::size_t>(lub)])) lub = static_cast<int>(c);
      }
      m[a * n + b] = static_cast<Elem>(glb);
      j[a * n + b] = static_cast<Elem>(lub);
    }
  std::vector<std::string> labels;
  for (const auto& nd : d.nodes) labels.push_back(nd.first);
  FiniteLattice l(n, std::move(m), std::move(j), std::move(neg), std::move(labels));
  ElemSet f(n);
  for (const auto& id : designated) f.set(index_of(id));
  return LogicMatrix(std::move(l), std::move(f), name);
}

// Finds a substructure of the ambient matrix isomorphic to the target and
// returns it with the ambient labels.
LogicMatrix locate(const LogicMatrix& ambient, const LogicMatrix& target) {
  for (const auto& s : subuniverses(ambient.lattice)) {
    if (s.count() != target.size()) continue;
    LogicMatrix sub = restrict_to(ambient, s);
    if (is_isomorphic(sub, target)) {
      sub.name = target.name;
      return sub;
    }
  }
  throw std::logic_error("no substructure of " + ambient.name + " matches " + target.name);
}

LogicMatrix dm_four(const std::vector<Elem>& designated, const std::string& name) {
  ElemSet f(4);
  for (Elem e : designated) f.set(e);
  return LogicMatrix(build_dm1(), f, name);
}

const std::map<std::string, std::function<LogicMatrix()>>& figure_table() {
  static const std::map<std::string, std::function<LogicMatrix()>> table = {
      {"M4", [] { return dm_four({dm1::t}, "M4"); }},
      {"Q4", [] { return dm_four({dm1::t, dm1::n, dm1::b}, "Q4"); }},
      {"M9", [] { return realize_drawing(grid9(), {"41"}, "M9"); }},
      {"M8", [] { return realize_drawing(grid8(), {"41"}, "M8"); }},
      {"M7", [] { return realize_drawing(grid7(), {"41"}, "M7"); }},
      {"N9", [] { return realize_drawing(grid9(), {"21", "31", "41"}, "N9"); }},
      {"N8", [] { return realize_drawing(grid8(), {"21", "31", "41"}, "N8"); }},
      {"N7", [] { return realize_drawing(grid7(), {"31", "41"}, "N7"); }},
      {"Q9", [] { return realize_drawing(grid9(), {"21", "23", "31", "32", "41"}, "Q9"); }},
      {"Q8", [] { return realize_drawing(grid8(), {"21", "31", "32", "41"}, "Q8"); }},
      {"Q7", [] { return realize_drawing(grid7(), {"31", "32", "41"}, "Q7"); }},
  };
  return table;
}

LogicMatrix realized_figure(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, LogicMatrix> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  const LogicMatrix target = figure_structure(name);
  // M and N structures live in the direct square, Q structures in the dual one.
  const LogicMatrix ambient = name[0] == 'Q' ? dual_power(dmm1(), 2) : direct_power(dmm1(), 2);
  LogicMatrix m = locate(ambient, target);
  cache.emplace(name, m);
  return m;
}

std::string trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return std::string(s);
}

int parse_positive(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 1)
    throw UnknownNameError("unknown structure name '" + std::string(whole) + "'");
  return v;
}

LogicMatrix atom(std::string_view raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw UnknownNameError("empty structure name");
  if (auto caret = s.rfind('^'); caret != std::string::npos) {
    const int n = parse_positive(std::string_view(s).substr(caret + 1), s);
    return direct_power(atom(std::string_view(s).substr(0, caret)), n);
  }
  if (s == "A1") return a1();
  if (s == "B1") return b1();
  if (figure_table().count(s)) return realized_figure(s);
  static const std::pair<const char*, LogicMatrix (*)()> bases[] = {
      {"BAm", bam1}, {"DMm", dmm1}, {"Pm", pm1}, {"Km", km1}};
  for (const auto& [prefix, make] : bases) {
    const std::string_view p(prefix);
    if (s.rfind(p, 0) != 0) continue;
    std::string_view rest = std::string_view(s).substr(p.size());
    if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    const int n = parse_positive(rest, s);
    LogicMatrix m = n == 1 ? make() : dual_power(make(), n);
    m.name = std::string(p) + std::to_string(n);
    return m;
  }
  throw UnknownNameError("unknown structure name '" + s + "'");
}

}  // namespace

LogicMatrix figure_structure(std::string_view name) {
  const auto& t = figure_table();
  auto it = t.find(std::string(name));
  if (it == t.end()) throw UnknownNameError("no figure structure named '" + std::string(name) + "'");
  return it->second();
}

LogicMatrix catalog(std::string_view name) {
  // Split on the binary operators, keeping them in order.
  std::string s(name);
  for (auto [from, to] : {std::pair<std::string, std::string>{"⊗", " (x) "}, {"×", " x "}}) {
    for (std::size_t p; (p = s.find(from)) != std::string::npos;) s.replace(p, from.size(), to);
  }
  std::vector<std::string> parts;
  std::vector<bool> dual_ops;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size();) {
    if (s.compare(i, 5, " (x) ") == 0) {
      parts.push_back(s.substr(start, i - start));
      dual_ops.push_back(true);
      i += 5;
      start = i;
    } else if (s.compare(i, 3, " x ") == 0) {
      parts.push_back(s.substr(start, i - start));
      dual_ops.push_back(false);
      i += 3;
      start = i;
    } else {
      ++i;
    }
  }
  parts.push_back(s.substr(start));
  LogicMatrix acc = atom(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    LogicMatrix rhs = atom(parts[i]);
    acc = dual_ops[i - 1] ? dual_product(acc, rhs) : direct_product(acc, rhs);
  }
  if (parts.size() > 1) acc.name = trim(s);
  return acc;
}

std::vector<std::string> catalog_names() {
  return {"BAm1", "Pm1", "Km1", "DMm1", "A1", "B1", "BAm2", "Pm2", "Km2", "DMm2",
          "DMm1^2", "M4", "M7", "M8", "M9", "N7", "N8", "N9", "Q4", "Q7", "Q8", "Q9",
          "Pm1 (x) Km1"};
}

std::vector<std::string> figure4_names() {
  return {"A1",
          "BAm1",
          "Km1",
          "Pm1",
          "DMm1",
          "Q4",
          "Q7",
          "Q8",
          "Q9",
          "BAm1 (x) BAm1",
          "BAm1 (x) Km1",
          "BAm1 (x) Pm1",
          "BAm1 (x) DMm1",
          "Km1 (x) Km1",
          "Km1 (x) Pm1",
          "Km1 (x) DMm1",
          "Pm1 (x) Pm1",
          "Pm1 (x) DMm1",
          "DMm1 (x) DMm1"};
}

}  // namespace dmw

#include "bnpg/instance_io.hpp"

#include "bnpg/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

namespace bnpg {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// ---- writing -------------------------------------------------------------

json degree_set_to_json(const DegreeSet& d) {
  if (d.is_interval() && d.members().size() >= 2) {
    return json{{"interval", json::array({d.min(), d.max()})}};
  }
  return json(d.members());
}

json target_to_json(const TargetClass& t) {
  return std::visit(
      [](const auto& cls) -> json {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, target::All>) {
          return json{{"kind", "all"}};
        } else if constexpr (std::is_same_v<T, target::ExactSet>) {
          return json{{"kind", "exact"}, {"set", cls.members}};
        } else if constexpr (std::is_same_v<T, target::SupersetOf>) {
          return json{{"kind", "superset"}, {"set", cls.members}};
        } else {
          return json{{"kind", "at_least"}, {"r", cls.r}};
        }
      },
      t);
}

// ---- reading -------------------------------------------------------------

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  json parse() {
    try {
      return json::parse(text_);
    } catch (const json::parse_error& e) {
      throw ParseError(line_col(e.byte), e.what());
    }
  }

  [[noreturn]] static void fail(const std::string& ptr, const std::string& msg) { throw ParseError(ptr, msg); }

  static const json& field(const json& obj, const std::string& key, const std::string& ptr) {
    if (!obj.is_object()) fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr + "/" + key, "missing field");
    return *it;
  }

  static int integer(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    return v.get<int>();
  }

  static Rational rational(const json& v, const std::string& ptr) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) fail(ptr, "expected a rational string \"p/q\"");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(ptr, e.what());
    }
  }

  static Cost cost(const json& v, const std::string& ptr) {
    if (v.is_string() && v.get<std::string>() == "inf") return Cost::infinity();
    Rational r = rational(v, ptr);
    if (r < 0) fail(ptr, "negative cost");
    return Cost(r);
  }

  static std::vector<int> player_list(const json& v, int n, const std::string& ptr) {
    if (!v.is_array()) fail(ptr, "expected an array of player indices");
    std::vector<int> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      int i = integer(v[k], fmt::format("{}/{}", ptr, k));
      if (i < 0 || i >= n) fail(fmt::format("{}/{}", ptr, k), fmt::format("player {} out of range", i));
      out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) fail(ptr, "duplicate player");
    return out;
  }

  static Edge pair(const json& v, int n, const std::string& ptr) {
    if (!v.is_array() || v.size() < 2) fail(ptr, "expected a pair [i, j]");
    int i = integer(v[0], ptr + "/0");
    int j = integer(v[1], ptr + "/1");
    if (i == j) fail(ptr, fmt::format("loop ({},{}) is not a valid pair", i, j));
    if (i < 0 || j < 0 || i >= n || j >= n) fail(ptr, fmt::format("pair ({},{}) out of range for n={}", i, j, n));
    return make_edge(i, j);
  }

  static Graph graph(const json& doc, const std::string& ptr) {
    int n = integer(field(doc, "n", ptr), ptr + "/n");
    if (n < 0) fail(ptr + "/n", "negative player count");
    const json& edges = field(doc, "edges", ptr);
    if (!edges.is_array()) fail(ptr + "/edges", "expected an array");
    Graph g(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      auto p = fmt::format("{}/edges/{}", ptr, k);
      auto [i, j] = pair(edges[k], n, p);
      if (edges[k].size() != 2) fail(p, "expected exactly two entries");
      if (g.has_edge(i, j)) fail(p, fmt::format("duplicate edge ({},{})", i, j));
      g.add_edge(i, j);
    }
    return g;
  }

 private:
  std::string line_col(std::size_t byte) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < byte && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return fmt::format("line {}, column {}", line, col);
  }

  std::string_view text_;
};

DegreeSet degree_set_from_json(const json& v, int n, const std::string& ptr) {
  if (v.is_object()) {
    const json& iv = Reader::field(v, "interval", ptr);
    if (!iv.is_array() || iv.size() != 2) Reader::fail(ptr + "/interval", "expected [L, R]");
    int lo = Reader::integer(iv[0], ptr + "/interval/0");
    int hi = Reader::integer(iv[1], ptr + "/interval/1");
    if (lo < 0 || hi < lo) Reader::fail(ptr + "/interval", "need 0 <= L <= R");
    return DegreeSet::interval(lo, hi, n);
  }
  if (!v.is_array()) Reader::fail(ptr, "expected an array or {\"interval\": [L, R]}");
  std::vector<int> members;
  for (std::size_t k = 0; k < v.size(); ++k) {
    int z = Reader::integer(v[k], fmt::format("{}/{}", ptr, k));
    if (z < 0) Reader::fail(fmt::format("{}/{}", ptr, k), "negative degree-set member");
    members.push_back(z);
  }
  return DegreeSet(std::move(members), n);
}

UtilityTable utility_from_json(const json& v, const std::string& ptr) {
  const json& values = Reader::field(v, "values", ptr);
  if (!values.is_array()) Reader::fail(ptr + "/values", "expected an array");
  std::vector<Rational> g;
  for (std::size_t k = 0; k < values.size(); ++k) {
    g.push_back(Reader::rational(values[k], fmt::format("{}/values/{}", ptr, k)));
  }
  Rational c = Reader::rational(Reader::field(v, "cost", ptr), ptr + "/cost");
  try {
    return UtilityTable(std::move(g), c);
  } catch (const std::exception& e) {
    Reader::fail(ptr, e.what());
  }
}

TargetClass target_from_json(const json& v, int n, const std::string& ptr) {
  const json& kind = Reader::field(v, "kind", ptr);
  if (!kind.is_string()) Reader::fail(ptr + "/kind", "expected a string");
  auto k = kind.get<std::string>();
  if (k == "all") return target::All{};
  if (k == "exact") return target::ExactSet{Reader::player_list(Reader::field(v, "set", ptr), n, ptr + "/set")};
  if (k == "superset") return target::SupersetOf{Reader::player_list(Reader::field(v, "set", ptr), n, ptr + "/set")};
  if (k == "at_least") {
    int r = Reader::integer(Reader::field(v, "r", ptr), ptr + "/r");
    if (r < 0 || r > n) Reader::fail(ptr + "/r", fmt::format("r={} outside [0, {}]", r, n));
    return target::AtLeast{r};
  }
  Reader::fail(ptr + "/kind", "unknown target kind \"" + k + "\"");
}

std::vector<Edge> edge_list(const json& v, int n, const std::string& ptr) {
  if (!v.is_array()) Reader::fail(ptr, "expected an array of pairs");
  std::vector<Edge> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(Reader::pair(v[k], n, fmt::format("{}/{}", ptr, k)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string render_document(const ojson& doc) {
  std::string out = "{\n";
  bool first = true;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + ojson(it.key()).dump() + ": " + it.value().dump();
  }
  out += "\n}\n";
  return out;
}

json edges_to_json(const std::vector<Edge>& edges) {
  json arr = json::array();
  for (auto [i, j] : edges) arr.push_back(json::array({i, j}));
  return arr;
}

std::string write_instance(const DesignInstance& inst) {
  const int n = inst.size();
  ojson doc;
  doc["n"] = n;
  doc["edges"] = edges_to_json(inst.graph.edges());
  json ds = json::array();
  for (const auto& d : inst.degsets) ds.push_back(degree_set_to_json(d));
  doc["degree_sets"] = ds;
  if (inst.utilities) {
    json us = json::array();
    for (const auto& u : *inst.utilities) {
      json values = json::array();
      for (const auto& v : u.values()) values.push_back(format_rational(v));
      us.push_back(json{{"values", values}, {"cost", format_rational(u.invest_cost())}});
    }
    doc["utilities"] = us;
  }
  json entries = json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Cost& dflt = inst.graph.has_edge(i, j) ? inst.costs.default_remove() : inst.costs.default_add();
      if (inst.costs.at(i, j) != dflt) entries.push_back(json::array({i, j, format_cost(inst.costs.at(i, j))}));
    }
  }
  ojson costs;
  costs["default_add"] = format_cost(inst.costs.default_add());
  costs["default_remove"] = format_cost(inst.costs.default_remove());
  costs["entries"] = entries;
  doc["costs"] = costs;
  doc["budget"] = format_cost(inst.budget);
  doc["target"] = target_to_json(inst.target);
  if (!inst.metadata.empty()) doc["metadata"] = json(inst.metadata);
  return render_document(doc);
}

DesignInstance read_instance(std::string_view text) {
  Reader reader(text);
  json doc = reader.parse();
  if (!doc.is_object()) Reader::fail("", "expected a JSON object");

  DesignInstance inst;
  inst.graph = Reader::graph(doc, "");
  const int n = inst.graph.size();

  if (auto it = doc.find("utilities"); it != doc.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != n) Reader::fail("/utilities", fmt::format("expected {} tables", n));
    std::vector<UtilityTable> us;
    for (int i = 0; i < n; ++i) {
      auto ptr = fmt::format("/utilities/{}", i);
      us.push_back(utility_from_json((*it)[i], ptr));
      if (us.back().player_count() != n) {
        Reader::fail(ptr + "/values", fmt::format("expected {} values g(0..n)", n + 1));
      }
    }
    inst.utilities = std::move(us);
  }

  if (auto it = doc.find("degree_sets"); it != doc.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != n) Reader::fail("/degree_sets", fmt::format("expected {} sets", n));
    for (int i = 0; i < n; ++i) inst.degsets.push_back(degree_set_from_json((*it)[i], n, fmt::format("/degree_sets/{}", i)));
    if (inst.utilities) {
      for (int i = 0; i < n; ++i) {
        if (derive_degree_set((*inst.utilities)[i]).members() != inst.degsets[i].members()) {
          Reader::fail(fmt::format("/degree_sets/{}", i), "disagrees with the degree set derived from utilities");
        }
      }
    }
  } else if (inst.utilities) {
    for (const auto& u : *inst.utilities) inst.degsets.push_back(derive_degree_set(u));
  } else {
    Reader::fail("/degree_sets", "missing field (and no utilities given)");
  }

  Cost default_add(1), default_remove(1);
  json entries = json::array();
  if (auto it = doc.find("costs"); it != doc.end()) {
    if (!it->is_object()) Reader::fail("/costs", "expected an object");
    if (auto d = it->find("default_add"); d != it->end()) default_add = Reader::cost(*d, "/costs/default_add");
    if (auto d = it->find("default_remove"); d != it->end()) default_remove = Reader::cost(*d, "/costs/default_remove");
    if (auto e = it->find("entries"); e != it->end()) entries = *e;
  }
  inst.costs = CostMatrix(inst.graph, default_add, default_remove);
  if (!entries.is_array()) Reader::fail("/costs/entries", "expected an array");
  std::set<Edge> seen;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto ptr = fmt::format("/costs/entries/{}", k);
    auto e = Reader::pair(entries[k], n, ptr);
    if (entries[k].size() != 3) Reader::fail(ptr, "expected [i, j, cost]");
    if (!seen.insert(e).second) Reader::fail(ptr, fmt::format("duplicate cost entry ({},{})", e.first, e.second));
    inst.costs.set(e.first, e.second, Reader::cost(entries[k][2], ptr + "/2"));
  }

  inst.budget = Reader::cost(Reader::field(doc, "budget", ""), "/budget");
  inst.target = target_from_json(Reader::field(doc, "target", ""), n, "/target");

  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) Reader::fail("/metadata", "expected an object");
    for (auto m = it->begin(); m != it->end(); ++m) {
      if (!m.value().is_string()) Reader::fail("/metadata/" + m.key(), "expected a string");
      inst.metadata[m.key()] = m.value().get<std::string>();
    }
  }
  return inst;
}

ojson solution_fields(const Solution& sol) {
  ojson doc;
  doc["n"] = sol.final_edges.size();
  doc["edges"] = edges_to_json(sol.final_edges.edges());
  doc["added"] = edges_to_json(sol.added);
  doc["removed"] = edges_to_json(sol.removed);
  doc["investing"] = sol.investing.investing_set();
  doc["cost"] = format_rational(sol.modification_cost);
  return doc;
}

std::string write_solution(const Solution& sol) { return render_document(solution_fields(sol)); }

Solution read_solution(std::string_view text) {
  Reader reader(text);
  json doc = reader.parse();
  if (!doc.is_object()) Reader::fail("", "expected a JSON object");
  Solution sol;
  sol.final_edges = Reader::graph(doc, "");
  const int n = sol.final_edges.size();
  sol.added = edge_list(Reader::field(doc, "added", ""), n, "/added");
  sol.removed = edge_list(Reader::field(doc, "removed", ""), n, "/removed");
  sol.investing = StrategyProfile::from_set(n, Reader::player_list(Reader::field(doc, "investing", ""), n, "/investing"));
  sol.modification_cost = Reader::rational(Reader::field(doc, "cost", ""), "/cost");
  return sol;
}

std::string write_graph(const Graph& g) {
  ojson doc;
  doc["n"] = g.size();
  doc["edges"] = edges_to_json(g.edges());
  return render_document(doc);
}

Graph read_graph(std::string_view text) {
  Reader reader(text);
  json doc = reader.parse();
  return Reader::graph(doc, "");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace bnpg

#include "floerkit/io.hpp"

#include <fstream>
#include <sstream>

namespace fk {

std::string join_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string join_path(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line:column
    size_t off = std::min(e.byte, text.size());
    int line = 1, col = 1;
    for (size_t k = 0; k + 1 < off; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col), "syntax error");
  }
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(join_path(path, key), "missing field");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path, "expected an integer");
  return j.get<int>();
}

std::string as_str(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

Scalar as_scalar(Field f, const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Scalar(f, j.get<long>());
    return Scalar::parse(f, as_str(j, path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path, e.what());
  }
}

Field as_field(const json& j, const std::string& path) {
  try {
    return parse_field(as_str(j, path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError(path, "field must be F2, Q or Qi");
  }
}

Generator generator_from_json(const json& j, const std::string& path) {
  Generator g;
  g.name = as_str(need(j, "name", path), join_path(path, "name"));
  g.h = j.contains("h") ? as_int(j["h"], join_path(path, "h")) : 0;
  const json& a = need(j, "alex", path);
  std::string ap = join_path(path, "alex");
  if (a.is_array()) {
    for (size_t k = 0; k < a.size(); ++k) g.alex.push_back(as_int(a[k], join_path(ap, k)));
  } else {
    g.alex.push_back(as_int(a, ap));
  }
  return g;
}

json to_json(const Generator& g) { return json{{"name", g.name}, {"h", g.h}, {"alex", g.alex}}; }

json to_json(const Poly& p) {
  json out = json::array();
  for (auto& [e, c] : p.terms()) out.push_back(json::array({e, c.str()}));
  return out;
}

Poly poly_from_json(Field f, int arity, const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected a list of [exponents, coefficient]");
  Poly p(f, arity);
  for (size_t k = 0; k < j.size(); ++k) {
    std::string tp = join_path(path, k);
    const json& t = j[k];
    if (!t.is_array() || t.size() != 2) throw InputError(tp, "expected [exponents, coefficient]");
    if (!t[0].is_array() || int(t[0].size()) != arity)
      throw InputError(join_path(tp, 0), "exponent vector must have length " + std::to_string(arity));
    Exp e;
    for (size_t v = 0; v < t[0].size(); ++v) {
      int x = as_int(t[0][v], join_path(join_path(tp, 0), v));
      if (x < 0) throw InputError(join_path(join_path(tp, 0), v), "negative exponent");
      e.push_back(x);
    }
    p.add_term(e, as_scalar(f, t[1], join_path(tp, 1)));
  }
  return p;
}

namespace {

std::vector<Generator> gen_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected a list of generators");
  std::vector<Generator> g;
  std::set<std::string> seen;
  for (size_t k = 0; k < j.size(); ++k) {
    g.push_back(generator_from_json(j[k], join_path(path, k)));
    if (!seen.insert(g.back().name).second) throw InputError(join_path(join_path(path, k), "name"), "duplicate name");
  }
  return g;
}

int find_gen(const std::vector<Generator>& g, const json& j, const std::string& path) {
  std::string n = as_str(j, path);
  for (size_t k = 0; k < g.size(); ++k)
    if (g[k].name == n) return int(k);
  throw InputError(path, "unknown generator '" + n + "'");
}

bool parse_z2(const json& j, const std::string& path) {
  if (!j.contains("grading")) return false;
  std::string s = as_str(j["grading"], join_path(path, "grading"));
  if (s == "Z") return false;
  if (s == "Z2") return true;
  throw InputError(join_path(path, "grading"), "grading must be Z or Z2");
}

int parse_arity(const json& j, const std::string& path) {
  int r = as_int(need(j, "arity", path), join_path(path, "arity"));
  if (r < 0) throw InputError(join_path(path, "arity"), "arity must be non-negative");
  return r;
}

// [[from, to, poly], ...] into a (target, source) matrix
PolyMatrix entries(Field f, int arity, const std::vector<Generator>& src, const std::vector<Generator>& tgt,
                   const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected a list of [from, to, polynomial]");
  PolyMatrix m(f, arity, int(tgt.size()), int(src.size()));
  for (size_t k = 0; k < j.size(); ++k) {
    std::string ep = join_path(path, k);
    const json& e = j[k];
    if (!e.is_array() || e.size() != 3) throw InputError(ep, "expected [from, to, polynomial]");
    int s = find_gen(src, e[0], join_path(ep, 0));
    int t = find_gen(tgt, e[1], join_path(ep, 1));
    m.add(t, s, poly_from_json(f, arity, e[2], join_path(ep, 2)));
  }
  return m;
}

json entries_json(const PolyMatrix& m, const std::vector<Generator>& src, const std::vector<Generator>& tgt) {
  json out = json::array();
  for (int s = 0; s < m.cols(); ++s)
    for (auto& [t, p] : m.column(s)) out.push_back(json::array({src[s].name, tgt[t].name, to_json(p)}));
  return out;
}

}  // namespace

FreeComplex complex_from_json(const json& j, const std::string& path) {
  Field f = as_field(need(j, "field", path), join_path(path, "field"));
  int r = parse_arity(j, path);
  bool z2 = parse_z2(j, path);
  auto gens = gen_list(need(j, "generators", path), join_path(path, "generators"));
  FreeComplex c(f, r, gens);
  c.z2 = z2;
  c.d = entries(f, r, gens, gens, need(j, "differential", path), join_path(path, "differential"));
  return c;
}

json to_json(const FreeComplex& c) {
  json g = json::array();
  for (auto& x : c.gens) g.push_back(to_json(x));
  return json{{"field", field_name(c.field)},
              {"arity", c.arity},
              {"grading", c.z2 ? "Z2" : "Z"},
              {"generators", g},
              {"differential", entries_json(c.d, c.gens, c.gens)}};
}

FreeComplex load_complex(const std::string& file) { return complex_from_json(read_json(file)); }

Hypercube cube_from_json(const json& j, const std::string& path) {
  Field f = as_field(need(j, "field", path), join_path(path, "field"));
  int r = parse_arity(j, path);
  int n = as_int(need(j, "dimension", path), join_path(path, "dimension"));
  if (n < 0 || n > 12) throw InputError(join_path(path, "dimension"), "dimension out of range");
  Hypercube h(f, r, n);
  h.z2 = parse_z2(j, path);
  const json& v = need(j, "vertices", path);
  std::string vp = join_path(path, "vertices");
  if (!v.is_object()) throw InputError(vp, "expected an object keyed by vertex");
  for (auto it = v.begin(); it != v.end(); ++it) {
    std::string kp = join_path(vp, it.key());
    int e;
    try {
      e = parse_bits(it.key());
    } catch (const std::exception&) {
      throw InputError(kp, "bad vertex label");
    }
    if (int(it.key().size()) != n) throw InputError(kp, "vertex label has wrong length");
    h.verts[e] = gen_list(it.value(), kp);
  }
  const json& m = need(j, "maps", path);
  std::string mp = join_path(path, "maps");
  if (!m.is_array()) throw InputError(mp, "expected a list of [from, to, entries]");
  for (size_t k = 0; k < m.size(); ++k) {
    std::string ep = join_path(mp, k);
    const json& x = m[k];
    if (!x.is_array() || x.size() != 3) throw InputError(ep, "expected [from vertex, to vertex, entries]");
    int e = parse_bits(as_str(x[0], join_path(ep, 0)));
    int e2 = parse_bits(as_str(x[1], join_path(ep, 1)));
    if (!below(e, e2)) throw InputError(ep, "map must go up the cube");
    h.set(e, e2, h.get(e, e2) + entries(f, r, h.verts[e], h.verts[e2], x[2], join_path(ep, 2)));
  }
  return h;
}

json to_json(const Hypercube& h) {
  json v = json::object();
  for (int e = 0; e < h.vertices(); ++e) {
    json g = json::array();
    for (auto& x : h.verts[e]) g.push_back(to_json(x));
    v[bits(e, h.n)] = g;
  }
  json m = json::array();
  for (auto& [k, mat] : h.maps)
    m.push_back(json::array({bits(k.first, h.n), bits(k.second, h.n), entries_json(mat, h.verts[k.first], h.verts[k.second])}));
  return json{{"field", field_name(h.field)}, {"arity", h.arity}, {"grading", h.z2 ? "Z2" : "Z"},
              {"dimension", h.n},           {"vertices", v},        {"maps", m}};
}

CubeMorphism morphism_from_json(const Hypercube& s, const Hypercube& t, const json& j, const std::string& path) {
  CubeMorphism f{s, t, {}, 0};
  f.grading = j.contains("grading") ? as_int(j["grading"], join_path(path, "grading")) : 0;
  const json& m = need(j, "maps", path);
  std::string mp = join_path(path, "maps");
  if (!m.is_array()) throw InputError(mp, "expected a list of [from, to, entries]");
  for (size_t k = 0; k < m.size(); ++k) {
    std::string ep = join_path(mp, k);
    const json& x = m[k];
    if (!x.is_array() || x.size() != 3) throw InputError(ep, "expected [from vertex, to vertex, entries]");
    int e = parse_bits(as_str(x[0], join_path(ep, 0)));
    int e2 = parse_bits(as_str(x[1], join_path(ep, 1)));
    if (!below(e, e2)) throw InputError(ep, "map must go up the cube");
    PolyMatrix b = entries(s.field, s.arity, s.verts[e], t.verts[e2], x[2], join_path(ep, 2));
    auto it = f.comp.find({e, e2});
    if (it == f.comp.end())
      f.comp[{e, e2}] = b;
    else
      it->second = it->second + b;
  }
  return f;
}

json to_json(const CubeMorphism& m) {
  json out = json::array();
  for (auto& [k, mat] : m.comp)
    out.push_back(json::array({bits(k.first, m.source.n), bits(k.second, m.source.n),
                               entries_json(mat, m.source.verts[k.first], m.target.verts[k.second])}));
  return json{{"grading", m.grading}, {"maps", out}};
}

PolyMatrix sparse_map(Field f, const std::vector<Generator>& src, const std::vector<Generator>& tgt, const json& j,
                      const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected a list of [from, to, coefficient]");
  PolyMatrix m(f, 0, int(tgt.size()), int(src.size()));
  for (size_t k = 0; k < j.size(); ++k) {
    std::string ep = join_path(path, k);
    const json& e = j[k];
    if (!e.is_array() || e.size() != 3) throw InputError(ep, "expected [from, to, coefficient]");
    int s = find_gen(src, e[0], join_path(ep, 0));
    int t = find_gen(tgt, e[1], join_path(ep, 1));
    m.add(t, s, Poly::constant(f, 0, as_scalar(f, e[2], join_path(ep, 2))));
  }
  return m;
}

json to_json(const GradedModule& m) {
  json out = json::array();
  for (auto& s : m.summands) {
    json x{{"free", s.free}, {"h", s.h}, {"alex", s.alex}};
    if (!s.free) x["order"] = s.order;
    out.push_back(x);
  }
  return out;
}

json to_json(const DimTable& t) {
  json out = json::array();
  for (auto& [k, d] : t) out.push_back(json::array({k.first, k.second, d}));
  return out;
}

json to_json(const RankTable& t) {
  json out = json::array();
  for (auto& [k, d] : t) out.push_back(json::array({std::get<0>(k), std::get<1>(k), std::get<2>(k), d}));
  return out;
}

}  // namespace fk

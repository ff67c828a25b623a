#pragma once

#include <json.hpp>

#include "dph/ainfty.hpp"
#include "dph/form.hpp"
#include "dph/simplicial.hpp"

namespace dph {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Divided power polynomials: coefficients as decimal strings, terms in the
// canonical (graded-lexicographic) order. Round trips are bit exact.

inline json to_json(const DpPoly& p) {
  json terms = json::array();
  for (auto& [m, c] : p.terms) {
    json t;
    t["c"] = c.get_str();
    t["e"] = m.e;
    terms.push_back(std::move(t));
  }
  return json{{"nvars", p.nvars}, {"terms", std::move(terms)}};
}

inline DpPoly dp_from_json(const json& j) {
  DpPoly p(j.at("nvars").get<int>());
  for (auto& t : j.at("terms")) {
    DpMono m;
    m.e = t.at("e").get<std::vector<uint32_t>>();
    if (m.e.size() != static_cast<size_t>(p.nvars) + 1)
      throw std::invalid_argument("dp poly: exponent arity mismatch");
    p.add_term(std::move(m), Int(t.at("c").get<std::string>()));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Connected algebras: generator basis plus sparse structure tables.

inline json to_json(const LinftyAlgebra& g) {
  json basis = json::array();
  for (int i = 0; i < g.gen_count(); ++i)
    basis.push_back(json{{"name", g.names[static_cast<size_t>(i)]},
                         {"deg", g.degs[static_cast<size_t>(i)]}});
  json l = json::object();
  for (auto& [k, tab] : g.l) {
    json entries = json::array();
    for (auto& [w, out] : tab) {
      json in = json::array();
      for (int gi : w) in.push_back(g.names[static_cast<size_t>(gi)]);
      json outs = json::array();
      for (auto& [gi, c] : out)
        outs.push_back(json{{"c", c.get_str()}, {"b", g.names[static_cast<size_t>(gi)]}});
      entries.push_back(json{{"in", std::move(in)}, {"out", std::move(outs)}});
    }
    l[std::to_string(k)] = std::move(entries);
  }
  return json{{"basis", std::move(basis)}, {"l", std::move(l)}};
}

inline LinftyAlgebra linfty_from_json(const json& j) {
  LinftyAlgebra g;
  std::map<std::string, int> idx;
  for (auto& b : j.at("basis")) {
    idx[b.at("name").get<std::string>()] = g.gen_count();
    g.names.push_back(b.at("name").get<std::string>());
    g.degs.push_back(b.at("deg").get<int>());
  }
  if (j.contains("l"))
    for (auto& [ks, entries] : j.at("l").items()) {
      int k = std::stoi(ks);
      g.max_arity = std::max(g.max_arity, k);
      for (auto& e : entries) {
        SymMono w;
        for (auto& n : e.at("in")) w.push_back(idx.at(n.get<std::string>()));
        std::map<int, Int> out;
        for (auto& o : e.at("out"))
          out[idx.at(o.at("b").get<std::string>())] =
              o.at("c").is_string() ? Int(o.at("c").get<std::string>())
                                    : Int(o.at("c").get<long>());
        g.l[k][std::move(w)] = std::move(out);
      }
    }
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Coefficient-valued forms.

inline json to_json(const EnvForm& e, const LinftyAlgebra& g) {
  json terms = json::array();
  for (auto& [w, f] : e.terms) {
    json env = json::array();
    for (auto& mono : w) {
      json sw = json::array();
      for (int gi : mono) sw.push_back(g.names[static_cast<size_t>(gi)]);
      env.push_back(std::move(sw));
    }
    for (auto& [mask, poly] : f.c) {
      json dx = json::array();
      for (int i = 1; i <= e.nvars; ++i)
        if (mask & (1ull << i)) dx.push_back(i);
      terms.push_back(json{{"env", env}, {"poly", to_json(poly)}, {"dx", std::move(dx)}});
    }
  }
  return json{{"n", e.nvars}, {"trunc", e.trunc}, {"terms", std::move(terms)}};
}

inline EnvForm envform_from_json(const json& j, std::shared_ptr<const LinftyAlgebra> g) {
  std::map<std::string, int> idx;
  for (int i = 0; i < g->gen_count(); ++i) idx[g->names[static_cast<size_t>(i)]] = i;
  EnvForm e(g, j.at("trunc").get<int>(), j.at("n").get<int>());
  for (auto& t : j.at("terms")) {
    EnvWord w;
    for (auto& sw : t.at("env")) {
      SymMono m;
      for (auto& n : sw) m.push_back(idx.at(n.get<std::string>()));
      int s = detail::canon_sym(*g, m);
      if (s == 0) throw std::invalid_argument("env form: vanishing wedge word");
      if (s != 1) throw std::invalid_argument("env form: wedge word not canonical");
      w.push_back(std::move(m));
    }
    DpPoly p = dp_from_json(t.at("poly"));
    uint64_t mask = 0;
    for (auto& i : t.at("dx")) {
      int b = i.get<int>();
      if (b < 1 || b > e.nvars || (mask & (1ull << b)))
        throw std::invalid_argument("env form: bad dx index");
      mask |= 1ull << b;
    }
    Form f(e.nvars);
    f.add_component(mask, p);
    e.add_term(w, f);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Chains and simplicial sets.

inline json to_json(const Chain& c) {
  json pts = json::array();
  for (auto& [a, b] : c.pts) pts.push_back(json::array({a, b}));
  return json{{"n", c.n}, {"r", c.r}, {"points", std::move(pts)}};
}

inline Chain chain_from_json(const json& j) {
  Chain c;
  c.n = j.at("n").get<int>();
  c.r = j.at("r").get<int>();
  for (auto& p : j.at("points")) c.pts.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  if (!c.is_valid()) throw std::invalid_argument("chain: invalid point list");
  return c;
}

inline json to_json(const SimplicialSet& X) {
  json cells = json::object();
  for (int d = 0; d < static_cast<int>(X.by_dim.size()); ++d) {
    json level = json::array();
    for (int id : X.by_dim[static_cast<size_t>(d)]) {
      json cell;
      cell["id"] = id;
      if (!X.labels[static_cast<size_t>(id)].empty()) cell["label"] = X.labels[static_cast<size_t>(id)];
      if (d > 0) {
        json faces = json::array();
        for (auto& f : X.faces[static_cast<size_t>(id)])
          faces.push_back(json::array({json(f.sigma.v), json(f.core)}));
        cell["faces"] = std::move(faces);
      }
      level.push_back(std::move(cell));
    }
    cells[std::to_string(d)] = std::move(level);
  }
  return json{{"cap", X.cap}, {"cells", std::move(cells)}};
}

inline SimplicialSet sset_from_json(const json& j) {
  SimplicialSet X;
  X.cap = j.at("cap").get<int>();
  X.ensure_dims(X.cap);
  // two passes: allocate cells in id order, then faces
  std::map<int, std::pair<int, json>> by_id;
  for (auto& [ds, level] : j.at("cells").items()) {
    int d = std::stoi(ds);
    for (auto& cell : level) by_id[cell.at("id").get<int>()] = {d, cell};
  }
  int expect = 0;
  for (auto& [id, dc] : by_id) {
    if (id != expect++) throw std::invalid_argument("simplicial set: ids must be dense");
    int nid = X.add_cell(dc.first,
                         dc.second.contains("label") ? dc.second.at("label").get<std::string>() : "");
    (void)nid;
  }
  for (auto& [id, dc] : by_id) {
    auto& [d, cell] = dc;
    if (d == 0) continue;
    for (auto& f : cell.at("faces")) {
      std::vector<int> sv = f.at(0).get<std::vector<int>>();
      int core = f.at(1).get<int>();
      X.faces[static_cast<size_t>(id)].push_back(
          Simplex{OrdinalMap(std::move(sv), X.dim[static_cast<size_t>(core)]), core});
    }
  }
  std::string why;
  if (!X.validate(&why)) throw std::invalid_argument("simplicial set: " + why);
  return X;
}

/// Connection / form-map file: algebra, truncation, values per cell.
inline json to_json(const FormMap& F) {
  json values = json::object();
  for (int id = 0; id < static_cast<int>(F.val.size()); ++id)
    values[std::to_string(id)] = to_json(F.val[static_cast<size_t>(id)], *F.g);
  return json{{"trunc", F.trunc}, {"algebra", to_json(*F.g)}, {"values", std::move(values)}};
}

inline FormMap formmap_from_json(const json& j, const SimplicialSet& X) {
  auto g = std::make_shared<const LinftyAlgebra>(linfty_from_json(j.at("algebra")));
  FormMap F = zero_form_map(X, g, j.at("trunc").get<int>());
  for (auto& [ids, val] : j.at("values").items()) {
    int id = std::stoi(ids);
    if (id < 0 || id >= X.cell_count()) throw std::invalid_argument("form map: bad cell id");
    EnvForm e = envform_from_json(val, g);
    if (e.nvars != X.dim[static_cast<size_t>(id)])
      throw std::invalid_argument("form map: arity does not match the cell dimension");
    F.val[static_cast<size_t>(id)] = std::move(e);
  }
  return F;
}

}  // namespace dph

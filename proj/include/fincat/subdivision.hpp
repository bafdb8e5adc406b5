#ifndef FINCAT_SUBDIVISION_HPP
#define FINCAT_SUBDIVISION_HPP

#include <map>

#include "fincat/core.hpp"

namespace fincat {

/// A composable string of arrows together with its object path. `arrows[i]`
/// runs objects[i] -> objects[i+1]; a dimension-0 chain is a bare object.
struct ChainSimplex {
  std::vector<ObjId> objects;
  std::vector<ArrId> arrows;
  int dim() const { return (int)arrows.size(); }
  bool operator==(const ChainSimplex& o) const {
    return objects == o.objects && arrows == o.arrows;
  }
};

/// Composite of the segment [i, j] of a chain (identity when i == j).
inline ArrId chain_composite(const FinCategory& C, const ChainSimplex& x, int i, int j) {
  if (i == j) return C.identity(x.objects[i]);
  ArrId f = x.arrows[i];
  for (int k = i + 1; k < j; ++k) f = C.compose(x.arrows[k], f);
  return f;
}

inline std::string chain_label(const FinCategory& C, const ChainSimplex& x) {
  if (x.dim() == 0) return "[" + C.obj_name(x.objects[0]) + "]";
  std::string s = "[";
  for (int i = 0; i < x.dim(); ++i) {
    if (i) s += "|";
    s += C.arr_name(x.arrows[i]);
  }
  return s + "]";
}

namespace detail {

/// All chains of dimension <= bound, ordered by dimension and then by the
/// extension order (append every eligible arrow out of the last object).
inline std::vector<ChainSimplex> enumerate_chains(const FinCategory& C, int bound,
                                                  bool identity_free) {
  std::vector<ChainSimplex> all;
  std::vector<ChainSimplex> layer;
  for (ObjId c = 0; c < C.n_objects; ++c) layer.push_back({{c}, {}});
  all = layer;
  for (int n = 1; n <= bound; ++n) {
    std::vector<ChainSimplex> next;
    for (const auto& x : layer) {
      ObjId last = x.objects.back();
      for (int f = 0; f < C.arrow_count(); ++f) {
        if (C.arrows[f].src != last) continue;
        if (identity_free && C.arrows[f].is_identity) continue;
        ChainSimplex y = x;
        y.objects.push_back(C.arrows[f].tgt);
        y.arrows.push_back(f);
        next.push_back(std::move(y));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

/// Monotone reindexings a with x = x' restricted along a: vertices must land
/// on equal objects and every arrow of x must be the composite of the
/// corresponding segment of x'.
inline std::vector<OrdinalMap> compatible_maps(const FinCategory& C, const ChainSimplex& x,
                                               const ChainSimplex& xp) {
  std::vector<OrdinalMap> out;
  for (const auto& a : all_ordinal_maps(x.dim(), xp.dim())) {
    bool ok = true;
    for (int i = 0; i <= x.dim() && ok; ++i)
      ok = x.objects[i] == xp.objects[a(i)];
    for (int i = 1; i <= x.dim() && ok; ++i)
      ok = chain_composite(C, xp, a(i - 1), a(i)) == x.arrows[i - 1];
    if (ok) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// The category of simplices of the nerve, truncated: objects are all chains
/// of dimension <= bound (identities allowed), arrows are the compatible
/// reindexings, composed as ordinal maps.
struct SimplexCategory {
  FinCategory cat;
  std::vector<ChainSimplex> chains;  // per object of cat
  std::vector<OrdinalMap> maps;      // per arrow of cat
  FinCategory base;
};

inline SimplexCategory delta_over(const FinCategory& C, int bound) {
  if (bound < 0) throw PreconditionError("delta_over: negative truncation");
  SimplexCategory D;
  D.base = C;
  D.chains = detail::enumerate_chains(C, bound, false);
  int n = (int)D.chains.size();
  D.cat.n_objects = n;
  for (int c = 0; c < n; ++c) D.cat.obj_names.push_back(chain_label(C, D.chains[c]));
  std::map<std::tuple<ObjId, ObjId, std::vector<int>>, ArrId> lookup;
  for (ObjId s = 0; s < n; ++s)
    for (ObjId t = 0; t < n; ++t)
      for (const auto& a : detail::compatible_maps(C, D.chains[s], D.chains[t])) {
        ArrId id = (ArrId)D.maps.size();
        D.cat.arrows.push_back({s, t, s == t && is_ordinal_id(a)});
        D.cat.arr_names.push_back("r" + std::to_string(id));
        D.maps.push_back(a);
        lookup[{s, t, a.v}] = id;
      }
  D.cat.finalize();
  for (ArrId g = 0; g < D.cat.arrow_count(); ++g)
    for (ArrId f = 0; f < D.cat.arrow_count(); ++f) {
      if (!D.cat.composable(g, f)) continue;
      OrdinalMap m = ordinal_compose(D.maps[g], D.maps[f]);
      D.cat.set_comp(g, f, lookup.at({D.cat.arrows[f].src, D.cat.arrows[g].tgt, m.v}));
    }
  return D;
}

/// Two parallel reindexings x -> x' are torsion-equivalent when, vertex by
/// vertex, the segment of x' between their images composes to an identity.
inline bool sim_related(const FinCategory& base, const ChainSimplex& xp, const OrdinalMap& a,
                        const OrdinalMap& b) {
  for (int i = 0; i <= a.dom; ++i) {
    int lo = std::min(a(i), b(i)), hi = std::max(a(i), b(i));
    if (!base.is_identity(chain_composite(base, xp, lo, hi))) return false;
  }
  return true;
}

inline bool sim_related(const SimplexCategory& D, ArrId a, ArrId b) {
  if (D.cat.arrows[a].src != D.cat.arrows[b].src || D.cat.arrows[a].tgt != D.cat.arrows[b].tgt)
    return false;
  return sim_related(D.base, D.chains[D.cat.arrows[a].tgt], D.maps[a], D.maps[b]);
}

/// One-step version: the maps differ in a single vertex and that gap
/// composes to an identity.
inline bool elementary_related(const FinCategory& base, const ChainSimplex& xp,
                               const OrdinalMap& a, const OrdinalMap& b) {
  int diff = -1;
  for (int i = 0; i <= a.dom; ++i)
    if (a(i) != b(i)) {
      if (diff >= 0) return false;
      diff = i;
    }
  if (diff < 0) return false;
  int lo = std::min(a(diff), b(diff)), hi = std::max(a(diff), b(diff));
  return base.is_identity(chain_composite(base, xp, lo, hi));
}

/// Whether the transitive closure of the one-step relation recovers the full
/// torsion equivalence on every parallel pair of the truncated simplex
/// category. On failure the report names a witness pair.
inline bool elementary_closure_equals_sim(const FinCategory& C, int bound,
                                          std::string* report = nullptr) {
  SimplexCategory D = delta_over(C, bound);
  int A = D.cat.arrow_count();
  // group arrows by (src, tgt) and run a union-find per group
  std::vector<int> parent(A);
  for (int i = 0; i < A; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int k) {
    while (parent[k] != k) {
      parent[k] = parent[parent[k]];
      k = parent[k];
    }
    return k;
  };
  std::map<std::pair<ObjId, ObjId>, std::vector<ArrId>> groups;
  for (ArrId f = 0; f < A; ++f) groups[{D.cat.arrows[f].src, D.cat.arrows[f].tgt}].push_back(f);
  for (const auto& [st, members] : groups) {
    const ChainSimplex& xp = D.chains[st.second];
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        if (elementary_related(D.base, xp, D.maps[members[i]], D.maps[members[j]]))
          parent[find(members[i])] = find(members[j]);
  }
  for (const auto& [st, members] : groups) {
    const ChainSimplex& xp = D.chains[st.second];
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        bool sim = sim_related(D.base, xp, D.maps[members[i]], D.maps[members[j]]);
        bool clo = find(members[i]) == find(members[j]);
        if (sim != clo) {
          if (report) {
            std::ostringstream os;
            os << (sim ? "equivalent pair not reachable by one-step moves"
                       : "one-step closure overshoots the equivalence")
               << " between " << D.cat.obj_name(st.first) << " and " << D.cat.obj_name(st.second)
               << " (maps " << ordinal_to_string(D.maps[members[i]]) << ", "
               << ordinal_to_string(D.maps[members[j]]) << ")";
            *report = os.str();
          }
          return false;
        }
      }
  }
  if (report) *report = "closure matches on " + std::to_string(A) + " arrows";
  return true;
}

// ---------------------------------------------------------------------------
// Categorical subdivision
// ---------------------------------------------------------------------------

enum class SubdivMode { exact, truncated };

/// sd(C): objects are the identity-free chains, arrows the torsion classes
/// of compatible reindexings, each named by its vertexwise-minimal member.
/// In exact mode (loop-free base) the chain lengths are bounded by the
/// longest identity-free path and every class is a singleton; truncated mode
/// caps the dimension explicitly and classes can be genuinely larger.
struct Subdivision {
  FinCategory cat;
  std::vector<ChainSimplex> chains;  // object of cat -> chain in the base
  std::vector<OrdinalMap> reps;      // arrow of cat -> minimal representative
  FinCategory base;
  int bound = 0;
  CatFunctor eps;        // last vertex: sd(C) -> C
  CatFunctor eps_prime;  // first vertex: sd(C) -> opposite(C)
};

inline Subdivision subdivide(const FinCategory& C, SubdivMode mode = SubdivMode::exact,
                             int truncation = -1) {
  Subdivision S;
  S.base = C;
  if (mode == SubdivMode::exact) {
    if (!loop_free(C))
      throw PreconditionError(
          "subdivide: base category has a loop; use truncated mode with an explicit bound");
    S.bound = longest_chain_length(C);
  } else {
    if (truncation < 0) throw PreconditionError("subdivide: truncated mode needs a bound");
    S.bound = truncation;
  }
  S.chains = detail::enumerate_chains(C, S.bound, true);
  int n = (int)S.chains.size();
  S.cat.n_objects = n;
  for (int c = 0; c < n; ++c) S.cat.obj_names.push_back(chain_label(C, S.chains[c]));

  std::map<std::tuple<ObjId, ObjId, std::vector<int>>, ArrId> class_of;
  for (ObjId s = 0; s < n; ++s)
    for (ObjId t = 0; t < n; ++t) {
      auto maps = detail::compatible_maps(C, S.chains[s], S.chains[t]);
      if (maps.empty()) continue;
      const ChainSimplex& xp = S.chains[t];
      std::vector<int> cls(maps.size(), -1);
      for (size_t i = 0; i < maps.size(); ++i) {
        if (cls[i] >= 0) continue;
        // new class: sweep up the vertexwise minimum over its members
        OrdinalMap rep = maps[i];
        std::vector<size_t> members{i};
        cls[i] = 1;
        for (size_t j = i + 1; j < maps.size(); ++j)
          if (cls[j] < 0 && sim_related(C, xp, maps[i], maps[j])) {
            cls[j] = 1;
            members.push_back(j);
            for (int v = 0; v <= rep.dom; ++v) rep.v[v] = std::min(rep.v[v], maps[j](v));
          }
        bool rep_found = false;
        for (size_t j : members)
          if (maps[j].v == rep.v) rep_found = true;
        if (!rep_found)
          throw PreconditionError("subdivide: class has no vertexwise-minimal member");
        ArrId id = (ArrId)S.reps.size();
        S.cat.arrows.push_back({s, t, s == t && is_ordinal_id(rep)});
        S.cat.arr_names.push_back("q" + std::to_string(id));
        S.reps.push_back(rep);
        for (size_t j : members) class_of[{s, t, maps[j].v}] = id;
      }
    }
  S.cat.finalize();
  for (ArrId g = 0; g < S.cat.arrow_count(); ++g)
    for (ArrId f = 0; f < S.cat.arrow_count(); ++f) {
      if (!S.cat.composable(g, f)) continue;
      OrdinalMap m = ordinal_compose(S.reps[g], S.reps[f]);
      S.cat.set_comp(g, f, class_of.at({S.cat.arrows[f].src, S.cat.arrows[g].tgt, m.v}));
    }

  S.eps.source = S.cat;
  S.eps.target = C;
  S.eps_prime.source = S.cat;
  S.eps_prime.target = opposite(C);
  for (ObjId c = 0; c < n; ++c) {
    S.eps.obj_map.push_back(S.chains[c].objects.back());
    S.eps_prime.obj_map.push_back(S.chains[c].objects.front());
  }
  for (ArrId f = 0; f < S.cat.arrow_count(); ++f) {
    const ChainSimplex& xp = S.chains[S.cat.arrows[f].tgt];
    const OrdinalMap& a = S.reps[f];
    S.eps.arr_map.push_back(chain_composite(C, xp, a(a.dom), xp.dim()));
    S.eps_prime.arr_map.push_back(chain_composite(C, xp, 0, a(0)));
  }
  return S;
}

/// The double subdivision of a loop-free category is expected to be a poset;
/// this runs the construction twice and checks.
inline bool sd2_is_poset(const FinCategory& C) {
  Subdivision once = subdivide(C);
  Subdivision twice = subdivide(once.cat);
  return is_poset(twice.cat);
}

}  // namespace fincat

#endif

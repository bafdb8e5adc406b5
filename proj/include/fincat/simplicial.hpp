#ifndef FINCAT_SIMPLICIAL_HPP
#define FINCAT_SIMPLICIAL_HPP

#include <map>

#include "fincat/twocat.hpp"

namespace fincat {

/// A possibly-degenerate simplex written in normal form: a nondegenerate
/// base together with the surjection that degenerates it. A simplex of
/// dimension n with base of dimension k carries surj: [n] ->> [k]; the
/// simplex is nondegenerate precisely when surj is the identity.
struct SimplexRef {
  int base_dim = 0;
  int base_id = 0;
  OrdinalMap surj;

  int dim() const { return surj.dom; }
  bool nondegenerate() const { return base_dim == surj.dom; }
  bool operator==(const SimplexRef& o) const {
    return base_dim == o.base_dim && base_id == o.base_id && surj == o.surj;
  }
};

/// Ascending list of degeneracy indices encoded by a surjection: the j with
/// surj(j) = surj(j+1). Together with the base this pins the simplex.
inline std::vector<int> degeneracy_word(const OrdinalMap& surj) {
  std::vector<int> w;
  for (int j = 0; j < surj.dom; ++j)
    if (surj.v[j] == surj.v[j + 1]) w.push_back(j);
  return w;
}

/// A simplicial set truncated at max_dim, storing only nondegenerate
/// simplices. Face maps land in normal form.
struct TruncatedSimplicialSet {
  int max_dim = 0;
  std::vector<std::vector<std::string>> labels;             // [n][id]
  std::vector<std::vector<std::vector<SimplexRef>>> faces;  // [n][id][i], n >= 1

  int count(int n) const {
    return (n >= 0 && n <= max_dim) ? (int)labels[n].size() : 0;
  }
  SimplexRef top_ref(int n, int id) const { return {n, id, ordinal_id(n)}; }
};

/// Applies an ordinal map to a simplex in normal form, producing normal
/// form again: factor the composed map, then peel cofaces (largest missing
/// vertex first) down to stored faces.
inline SimplexRef ref_apply(const TruncatedSimplicialSet& X, const SimplexRef& R,
                            const OrdinalMap& f) {
  if (f.cod != R.dim()) throw PreconditionError("ref_apply: ordinal map does not match dimension");
  OrdinalMap g = ordinal_compose(R.surj, f);
  auto [epi, mono] = factor_epi_mono(g);
  if (is_ordinal_id(mono)) return {R.base_dim, R.base_id, epi};
  // peel the largest vertex of [base_dim] missing from mono's image
  int j = -1;
  {
    std::vector<bool> hit(mono.cod + 1, false);
    for (int x : mono.v) hit[x] = true;
    for (int t = mono.cod; t >= 0; --t)
      if (!hit[t]) {
        j = t;
        break;
      }
  }
  OrdinalMap rest{mono.dom, mono.cod - 1, {}};
  for (int x : mono.v) rest.v.push_back(x > j ? x - 1 : x);
  const SimplexRef& face = X.faces[R.base_dim][R.base_id][j];
  SimplexRef inner = ref_apply(X, face, rest);
  return {inner.base_dim, inner.base_id, ordinal_compose(inner.surj, epi)};
}

inline SimplexRef ref_face(const TruncatedSimplicialSet& X, const SimplexRef& R, int i) {
  return ref_apply(X, R, delta_map(R.dim(), i));
}

inline ValidationReport validate_tss(const TruncatedSimplicialSet& X) {
  ValidationReport r;
  if ((int)X.labels.size() != X.max_dim + 1 || (int)X.faces.size() != X.max_dim + 1) {
    r.add("tss-size", "per-dimension lists have wrong length");
    return r;
  }
  for (int n = 1; n <= X.max_dim; ++n) {
    if ((int)X.faces[n].size() != X.count(n)) {
      r.add("tss-size", "face list at dimension " + std::to_string(n) + " has wrong length");
      return r;
    }
    for (int id = 0; id < X.count(n); ++id) {
      if ((int)X.faces[n][id].size() != n + 1) {
        r.add("tss-faces", "simplex (" + std::to_string(n) + "," + std::to_string(id) +
                               ") does not have n+1 faces");
        return r;
      }
      for (int i = 0; i <= n; ++i) {
        const SimplexRef& F = X.faces[n][id][i];
        if (F.dim() != n - 1 || F.base_dim < 0 || F.base_dim > n - 1 ||
            F.base_id < 0 || F.base_id >= X.count(F.base_dim) ||
            !is_monotone(F.surj) || !is_ordinal_surjective(F.surj))
          r.add("tss-ref", "malformed face reference on simplex (" + std::to_string(n) + "," +
                               std::to_string(id) + ")");
      }
    }
  }
  if (!r.ok()) return r;
  for (int n = 2; n <= X.max_dim; ++n)
    for (int id = 0; id < X.count(n); ++id)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          SimplexRef a = ref_face(X, X.faces[n][id][j], i);
          SimplexRef b = ref_face(X, X.faces[n][id][i], j - 1);
          if (!(a == b))
            r.add("simplicial-identity",
                  "d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                      std::to_string(j - 1) + " d_" + std::to_string(i) + " on simplex (" +
                      std::to_string(n) + "," + std::to_string(id) + ")");
        }
  return r;
}

// ---------------------------------------------------------------------------
// Nerve of a category
// ---------------------------------------------------------------------------

namespace detail {

/// Normal form of an arrow chain that may contain identities: the base is
/// the identity-free subchain, the surjection collapses the skipped steps.
inline SimplexRef normalize_chain(const FinCategory& C, const std::vector<ArrId>& chain,
                                  const std::map<std::vector<ArrId>, int>* index_by_dim,
                                  ObjId start_obj) {
  std::vector<ArrId> core;
  OrdinalMap surj{(int)chain.size(), 0, {}};
  surj.v.push_back(0);
  for (ArrId f : chain) {
    if (!C.arrows[f].is_identity) core.push_back(f);
    surj.v.push_back((int)core.size());
  }
  surj.cod = (int)core.size();
  int base_id;
  if (core.empty())
    base_id = start_obj;  // dimension-0 bases are indexed by object
  else
    base_id = index_by_dim[core.size()].at(core);
  return {(int)core.size(), base_id, surj};
}

}  // namespace detail

/// Nerve of a category, truncated: nondegenerate n-simplices are the chains
/// of n composable non-identity arrows; inner faces compose two consecutive
/// arrows, outer faces drop an end.
inline TruncatedSimplicialSet nerve(const FinCategory& C, int N) {
  TruncatedSimplicialSet X;
  X.max_dim = N;
  X.labels.resize(N + 1);
  X.faces.resize(N + 1);
  std::vector<std::vector<std::vector<ArrId>>> chains(N + 1);
  std::vector<std::map<std::vector<ArrId>, int>> index(N + 1);

  for (ObjId c = 0; c < C.n_objects; ++c) X.labels[0].push_back(C.obj_name(c));
  for (int n = 1; n <= N; ++n) {
    if (n == 1) {
      for (ArrId f = 0; f < C.arrow_count(); ++f)
        if (!C.arrows[f].is_identity) {
          index[1][{f}] = (int)chains[1].size();
          chains[1].push_back({f});
        }
    } else {
      for (const auto& x : chains[n - 1]) {
        ObjId end = C.arrows[x.back()].tgt;
        for (ArrId f = 0; f < C.arrow_count(); ++f)
          if (!C.arrows[f].is_identity && C.arrows[f].src == end) {
            std::vector<ArrId> y = x;
            y.push_back(f);
            index[n][y] = (int)chains[n].size();
            chains[n].push_back(std::move(y));
          }
      }
    }
    for (const auto& x : chains[n]) {
      std::string lbl = C.arr_name(x[0]);
      for (size_t i = 1; i < x.size(); ++i) lbl += "|" + C.arr_name(x[i]);
      X.labels[n].push_back(lbl);
    }
  }

  for (int n = 1; n <= N; ++n) {
    X.faces[n].resize(chains[n].size());
    for (size_t id = 0; id < chains[n].size(); ++id) {
      const auto& x = chains[n][id];
      auto& fs = X.faces[n][id];
      fs.resize(n + 1);
      for (int i = 0; i <= n; ++i) {
        std::vector<ArrId> y;
        if (i == 0)
          y.assign(x.begin() + 1, x.end());
        else if (i == n)
          y.assign(x.begin(), x.end() - 1);
        else {
          y.assign(x.begin(), x.end());
          y[i - 1] = C.comp_at(y[i], y[i - 1]);
          y.erase(y.begin() + i);
        }
        ObjId start = (i == 0) ? C.arrows[x[0]].tgt : C.arrows[x[0]].src;
        fs[i] = detail::normalize_chain(C, y, index.data(), start);
      }
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Dense simplicial sets (all simplices stored; used as an intermediate)
// ---------------------------------------------------------------------------

/// A fully tabulated truncated simplicial set: every simplex (degenerate or
/// not) has an index, faces and degeneracies are plain index maps.
struct DenseSimplicialSet {
  int max_dim = 0;
  std::vector<int> counts;
  std::vector<std::vector<std::vector<int>>> face;  // [n][id][i], n >= 1
  std::vector<std::vector<std::vector<int>>> deg;   // [n][id][i], n < max_dim
  std::vector<std::vector<std::string>> labels;
};

inline ValidationReport validate_dense(const DenseSimplicialSet& D) {
  ValidationReport r;
  for (int n = 2; n <= D.max_dim; ++n)
    for (int id = 0; id < D.counts[n]; ++id)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (D.face[n - 1][D.face[n][id][j]][i] != D.face[n - 1][D.face[n][id][i]][j - 1])
            r.add("dense-face", "face identity fails at dim " + std::to_string(n));
  for (int n = 0; n + 1 < D.max_dim; ++n)
    for (int id = 0; id < D.counts[n]; ++id)
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
          if (D.deg[n + 1][D.deg[n][id][j]][i] != D.deg[n + 1][D.deg[n][id][i]][j + 1])
            r.add("dense-deg", "degeneracy identity fails at dim " + std::to_string(n));
  for (int n = 1; n <= D.max_dim; ++n) {
    for (int id = 0; id < D.counts[n - 1]; ++id)
      for (int j = 0; j <= n - 1; ++j) {
        int s = D.deg[n - 1][id][j];
        for (int i = 0; i <= n; ++i) {
          int got = D.face[n][s][i];
          int want;
          if (i == j || i == j + 1)
            want = id;
          else if (i < j)
            want = D.deg[n - 2][D.face[n - 1][id][i]][j - 1];
          else
            want = D.deg[n - 2][D.face[n - 1][id][i - 1]][j];
          if (got != want) {
            r.add("dense-mixed", "mixed identity fails at dim " + std::to_string(n));
          }
        }
      }
  }
  return r;
}

/// Discards degenerate simplices, rewriting faces into normal form. The
/// standard criterion is used: x is degenerate at i iff s_i(d_{i+1}(x)) = x.
inline TruncatedSimplicialSet compress_dense(const DenseSimplicialSet& D) {
  TruncatedSimplicialSet X;
  X.max_dim = D.max_dim;
  X.labels.resize(D.max_dim + 1);
  X.faces.resize(D.max_dim + 1);
  std::vector<std::vector<int>> nd_index(D.max_dim + 1);
  for (int n = 0; n <= D.max_dim; ++n) {
    nd_index[n].assign(D.counts[n], -1);
    for (int id = 0; id < D.counts[n]; ++id) {
      bool degen = false;
      for (int i = 0; i < n && !degen; ++i)
        if (D.deg[n - 1][D.face[n][id][i + 1]][i] == id) degen = true;
      if (!degen) {
        nd_index[n][id] = X.count(n);
        X.labels[n].push_back(D.labels.empty() ? "" : D.labels[n][id]);
      }
    }
  }
  // normal form of an arbitrary dense simplex
  std::function<SimplexRef(int, int)> rep = [&](int n, int id) -> SimplexRef {
    for (int i = 0; i < n; ++i) {
      int y = D.face[n][id][i + 1];
      if (D.deg[n - 1][y][i] == id) {
        SimplexRef inner = rep(n - 1, y);
        return {inner.base_dim, inner.base_id, ordinal_compose(inner.surj, sigma_map(n - 1, i))};
      }
    }
    return {n, nd_index[n][id], ordinal_id(n)};
  };
  for (int n = 1; n <= D.max_dim; ++n) {
    X.faces[n].reserve(X.count(n));
    for (int id = 0; id < D.counts[n]; ++id) {
      if (nd_index[n][id] < 0) continue;
      std::vector<SimplexRef> fs(n + 1);
      for (int i = 0; i <= n; ++i) fs[i] = rep(n - 1, D.face[n][id][i]);
      X.faces[n].push_back(std::move(fs));
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Bisimplicial sets and the double nerve
// ---------------------------------------------------------------------------

/// Fully tabulated truncated bisimplicial set. The horizontal index p runs
/// over vertical chains of 2-cells, the vertical index q over composable
/// strings of 1-arrows.
struct TruncatedBisimplicialSet {
  int max_p = 0, max_q = 0;
  std::vector<std::vector<int>> counts;  // [p][q]
  // faces/degeneracies: [p][q][id][i] -> index in the adjacent bidegree
  std::vector<std::vector<std::vector<std::vector<int>>>> h_face, v_face, h_deg, v_deg;
  std::vector<std::vector<std::vector<std::string>>> labels;
};

inline ValidationReport validate_bis(const TruncatedBisimplicialSet& B) {
  ValidationReport r;
  auto chk = [&](bool cond, const std::string& what, int p, int q) {
    if (!cond)
      r.add(what, "at bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
  };
  for (int p = 0; p <= B.max_p; ++p)
    for (int q = 0; q <= B.max_q; ++q)
      for (int id = 0; id < B.counts[p][q]; ++id) {
        // horizontal simplicial identities
        if (p >= 2)
          for (int j = 1; j <= p; ++j)
            for (int i = 0; i < j; ++i)
              chk(B.h_face[p - 1][q][B.h_face[p][q][id][j]][i] ==
                      B.h_face[p - 1][q][B.h_face[p][q][id][i]][j - 1],
                  "h-face-identity", p, q);
        if (q >= 2)
          for (int j = 1; j <= q; ++j)
            for (int i = 0; i < j; ++i)
              chk(B.v_face[p][q - 1][B.v_face[p][q][id][j]][i] ==
                      B.v_face[p][q - 1][B.v_face[p][q][id][i]][j - 1],
                  "v-face-identity", p, q);
        // the two directions commute, on faces and degeneracies
        if (p >= 1 && q >= 1)
          for (int t = 0; t <= p; ++t)
            for (int i = 0; i <= q; ++i)
              chk(B.v_face[p - 1][q][B.h_face[p][q][id][t]][i] ==
                      B.h_face[p][q - 1][B.v_face[p][q][id][i]][t],
                  "hv-commute", p, q);
        if (p < B.max_p && q < B.max_q)
          for (int t = 0; t <= p; ++t)
            for (int i = 0; i <= q; ++i)
              chk(B.v_deg[p + 1][q][B.h_deg[p][q][id][t]][i] ==
                      B.h_deg[p][q + 1][B.v_deg[p][q][id][i]][t],
                  "hv-deg-commute", p, q);
        if (p >= 1 && q < B.max_q)
          for (int t = 0; t <= p; ++t)
            for (int i = 0; i <= q; ++i)
              chk(B.v_deg[p - 1][q][B.h_face[p][q][id][t]][i] ==
                      B.h_face[p][q + 1][B.v_deg[p][q][id][i]][t],
                  "hv-mixed-commute", p, q);
        if (q >= 1 && p < B.max_p)
          for (int t = 0; t <= p; ++t)
            for (int i = 0; i <= q; ++i)
              chk(B.h_deg[p][q - 1][B.v_face[p][q][id][i]][t] ==
                      B.v_face[p + 1][q][B.h_deg[p][q][id][t]][i],
                  "hv-mixed-commute", p, q);
        // full face-degeneracy relations in each direction
        if (p < B.max_p)
          for (int j = 0; j <= p; ++j) {
            int s = B.h_deg[p][q][id][j];
            for (int i = 0; i <= p + 1; ++i) {
              int got = B.h_face[p + 1][q][s][i];
              int want = (i == j || i == j + 1) ? id
                         : (i < j) ? B.h_deg[p - 1][q][B.h_face[p][q][id][i]][j - 1]
                                   : B.h_deg[p - 1][q][B.h_face[p][q][id][i - 1]][j];
              chk(got == want, "h-face-deg", p, q);
            }
          }
        if (q < B.max_q)
          for (int j = 0; j <= q; ++j) {
            int s = B.v_deg[p][q][id][j];
            for (int i = 0; i <= q + 1; ++i) {
              int got = B.v_face[p][q + 1][s][i];
              int want = (i == j || i == j + 1) ? id
                         : (i < j) ? B.v_deg[p][q - 1][B.v_face[p][q][id][i]][j - 1]
                                   : B.v_deg[p][q - 1][B.v_face[p][q][id][i - 1]][j];
              chk(got == want, "v-face-deg", p, q);
            }
          }
        // degeneracy-degeneracy relations
        if (p + 1 < B.max_p)
          for (int i = 0; i <= p; ++i)
            for (int j = i; j <= p; ++j)
              chk(B.h_deg[p + 1][q][B.h_deg[p][q][id][j]][i] ==
                      B.h_deg[p + 1][q][B.h_deg[p][q][id][i]][j + 1],
                  "h-deg-deg", p, q);
        if (q + 1 < B.max_q)
          for (int i = 0; i <= q; ++i)
            for (int j = i; j <= q; ++j)
              chk(B.v_deg[p][q + 1][B.v_deg[p][q][id][j]][i] ==
                      B.v_deg[p][q + 1][B.v_deg[p][q][id][i]][j + 1],
                  "v-deg-deg", p, q);
      }
  return r;
}

namespace detail {

/// Working form of a (p,q)-simplex of the double nerve: a path of objects,
/// the bottom row of 1-arrows, and p rows of vertically composable 2-cells
/// (stored per column as a chain in the hom category).
struct BisimplexData {
  std::vector<ObjId> objs;             // q+1 objects
  std::vector<int> f0;                 // q bottom 1-arrows (local)
  std::vector<std::vector<int>> cell;  // [t][i], t = 1..p rows, i = columns
};

inline std::vector<int> bis_key(const BisimplexData& s) {
  std::vector<int> k;
  k.insert(k.end(), s.objs.begin(), s.objs.end());
  k.push_back(-1);
  k.insert(k.end(), s.f0.begin(), s.f0.end());
  for (const auto& row : s.cell) {
    k.push_back(-2);
    k.insert(k.end(), row.begin(), row.end());
  }
  return k;
}

/// The 1-arrow at level t of column i (target of the t-th cell chain).
inline int bis_level(const Fin2Category& T, const BisimplexData& s, int t, int i) {
  if (t == 0) return s.f0[i];
  const FinCategory& H = T.hom(s.objs[i], s.objs[i + 1]);
  return H.arrows[s.cell[t - 1][i]].tgt;
}

}  // namespace detail

/// The double nerve of a 2-category: the nerve of each hom category,
/// assembled over composable strings of 1-arrows. All simplices are stored.
inline TruncatedBisimplicialSet two_nerve(const Fin2Category& T, int N) {
  using detail::BisimplexData;
  TruncatedBisimplicialSet B;
  B.max_p = B.max_q = N;
  B.counts.assign(N + 1, std::vector<int>(N + 1, 0));
  B.labels.assign(N + 1, std::vector<std::vector<std::string>>(N + 1));
  B.h_face.assign(N + 1, std::vector<std::vector<std::vector<int>>>(N + 1));
  B.v_face.assign(N + 1, std::vector<std::vector<std::vector<int>>>(N + 1));
  B.h_deg.assign(N + 1, std::vector<std::vector<std::vector<int>>>(N + 1));
  B.v_deg.assign(N + 1, std::vector<std::vector<std::vector<int>>>(N + 1));

  std::vector<std::vector<std::vector<BisimplexData>>> data(
      N + 1, std::vector<std::vector<BisimplexData>>(N + 1));
  std::vector<std::vector<std::map<std::vector<int>, int>>> index(
      N + 1, std::vector<std::map<std::vector<int>, int>>(N + 1));

  // enumerate: object paths, then per column a p-chain in the hom category
  for (int q = 0; q <= N; ++q) {
    std::vector<std::vector<ObjId>> paths;
    if (q == 0) {
      for (ObjId c = 0; c < T.n_objects; ++c) paths.push_back({c});
    } else {
      std::function<void(std::vector<ObjId>&)> grow = [&](std::vector<ObjId>& pa) {
        if ((int)pa.size() == q + 1) {
          paths.push_back(pa);
          return;
        }
        for (ObjId c = 0; c < T.n_objects; ++c)
          if (T.n1(pa.back(), c) > 0) {
            pa.push_back(c);
            grow(pa);
            pa.pop_back();
          }
      };
      for (ObjId c = 0; c < T.n_objects; ++c) {
        std::vector<ObjId> pa{c};
        grow(pa);
      }
    }
    for (int p = 0; p <= N; ++p) {
      for (const auto& pa : paths) {
        // per-column choices: a 1-arrow plus p composable 2-cells above it
        std::vector<std::vector<std::pair<int, std::vector<int>>>> col_choices(q);
        bool feasible = true;
        for (int i = 0; i < q && feasible; ++i) {
          const FinCategory& H = T.hom(pa[i], pa[i + 1]);
          auto& out = col_choices[i];
          std::vector<int> chain;
          std::function<void(int)> grow_chain = [&](int level_obj) {
            if ((int)chain.size() == p) {
              out.push_back({-1, chain});  // first slot filled below
              out.back().first = p == 0 ? level_obj : H.arrows[chain[0]].src;
              return;
            }
            for (int m = 0; m < H.arrow_count(); ++m)
              if (H.arrows[m].src == level_obj) {
                chain.push_back(m);
                grow_chain(H.arrows[m].tgt);
                chain.pop_back();
              }
          };
          for (int x = 0; x < H.n_objects; ++x) grow_chain(x);
          if (out.empty()) feasible = false;
        }
        if (!feasible) continue;
        BisimplexData s;
        s.objs = pa;
        s.f0.assign(q, -1);
        s.cell.assign(p, std::vector<int>(q, -1));
        std::function<void(int)> fill = [&](int i) {
          if (i == q) {
            index[p][q][detail::bis_key(s)] = (int)data[p][q].size();
            data[p][q].push_back(s);
            return;
          }
          for (const auto& [start, chain] : col_choices[i]) {
            s.f0[i] = start;
            for (int t = 0; t < p; ++t) s.cell[t][i] = chain[t];
            fill(i + 1);
          }
        };
        fill(0);
      }
      B.counts[p][q] = (int)data[p][q].size();
      for (const auto& s : data[p][q]) {
        std::string lbl;
        for (size_t i = 0; i < s.objs.size(); ++i)
          lbl += (i ? ">" : "") + T.obj_name(s.objs[i]);
        for (int i = 0; i < q; ++i) lbl += "," + T.one_name(s.objs[i], s.objs[i + 1], s.f0[i]);
        B.labels[p][q].push_back(lbl);
      }
    }
  }

  // faces and degeneracies
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N; ++q) {
      int cnt = B.counts[p][q];
      if (p >= 1) B.h_face[p][q].assign(cnt, std::vector<int>(p + 1, -1));
      if (q >= 1) B.v_face[p][q].assign(cnt, std::vector<int>(q + 1, -1));
      if (p < N) B.h_deg[p][q].assign(cnt, std::vector<int>(p + 1, -1));
      if (q < N) B.v_deg[p][q].assign(cnt, std::vector<int>(q + 1, -1));
      for (int id = 0; id < cnt; ++id) {
        const BisimplexData& s = data[p][q][id];
        if (p >= 1)
          for (int t = 0; t <= p; ++t) {
            BisimplexData y;
            y.objs = s.objs;
            y.cell.assign(p - 1, std::vector<int>(q, -1));
            y.f0.assign(q, -1);
            for (int i = 0; i < q; ++i) {
              const FinCategory& H = T.hom(s.objs[i], s.objs[i + 1]);
              if (t == 0) {
                y.f0[i] = detail::bis_level(T, s, 1, i);
                for (int u = 1; u < p; ++u) y.cell[u - 1][i] = s.cell[u][i];
              } else if (t == p) {
                y.f0[i] = s.f0[i];
                for (int u = 0; u < p - 1; ++u) y.cell[u][i] = s.cell[u][i];
              } else {
                y.f0[i] = s.f0[i];
                for (int u = 0; u < t - 1; ++u) y.cell[u][i] = s.cell[u][i];
                y.cell[t - 1][i] = H.comp_at(s.cell[t][i], s.cell[t - 1][i]);
                for (int u = t + 1; u < p; ++u) y.cell[u - 1][i] = s.cell[u][i];
              }
            }
            B.h_face[p][q][id][t] = index[p - 1][q].at(detail::bis_key(y));
          }
        if (q >= 1)
          for (int i = 0; i <= q; ++i) {
            BisimplexData y;
            y.objs = s.objs;
            if (i == 0 || i == q) {
              int drop = (i == 0) ? 0 : q;
              y.objs.erase(y.objs.begin() + drop);
              y.f0 = s.f0;
              y.f0.erase(y.f0.begin() + (i == 0 ? 0 : q - 1));
              y.cell.assign(p, std::vector<int>(q - 1, -1));
              for (int t = 0; t < p; ++t)
                for (int u = 0; u < q - 1; ++u)
                  y.cell[t][u] = s.cell[t][(i == 0) ? u + 1 : u];
            } else {
              y.objs.erase(y.objs.begin() + i);
              y.f0.assign(q - 1, -1);
              y.cell.assign(p, std::vector<int>(q - 1, -1));
              ObjId a = s.objs[i - 1], b = s.objs[i], c = s.objs[i + 1];
              for (int u = 0; u < q - 1; ++u) {
                if (u < i - 1) {
                  y.f0[u] = s.f0[u];
                  for (int t = 0; t < p; ++t) y.cell[t][u] = s.cell[t][u];
                } else if (u == i - 1) {
                  y.f0[u] = T.h1(a, b, c, s.f0[i], s.f0[i - 1]);
                  for (int t = 0; t < p; ++t)
                    y.cell[t][u] = T.h2(a, b, c, s.cell[t][i], s.cell[t][i - 1]);
                } else {
                  y.f0[u] = s.f0[u + 1];
                  for (int t = 0; t < p; ++t) y.cell[t][u] = s.cell[t][u + 1];
                }
              }
            }
            B.v_face[p][q][id][i] = index[p][q - 1].at(detail::bis_key(y));
          }
        if (p < N)
          for (int t = 0; t <= p; ++t) {
            BisimplexData y = s;
            y.cell.insert(y.cell.begin() + t, std::vector<int>(q, -1));
            for (int i = 0; i < q; ++i) {
              const FinCategory& H = T.hom(s.objs[i], s.objs[i + 1]);
              y.cell[t][i] = H.identity(detail::bis_level(T, s, t, i));
            }
            B.h_deg[p][q][id][t] = index[p + 1][q].at(detail::bis_key(y));
          }
        if (q < N)
          for (int i = 0; i <= q; ++i) {
            BisimplexData y;
            y.objs = s.objs;
            y.objs.insert(y.objs.begin() + i, s.objs[i]);
            y.f0 = s.f0;
            y.f0.insert(y.f0.begin() + i, T.id1[s.objs[i]]);
            y.cell = s.cell;
            const FinCategory& H = T.hom(s.objs[i], s.objs[i]);
            for (int t = 0; t < p; ++t)
              y.cell[t].insert(y.cell[t].begin() + i, H.identity(T.id1[s.objs[i]]));
            B.v_deg[p][q][id][i] = index[p][q + 1].at(detail::bis_key(y));
          }
      }
    }
  return B;
}

/// Restriction of a bisimplicial set to its diagonal, as a dense simplicial
/// set: d_i is the horizontal face followed by the vertical one.
inline DenseSimplicialSet diagonal(const TruncatedBisimplicialSet& B) {
  if (B.max_p != B.max_q) throw PreconditionError("diagonal: bounds differ");
  DenseSimplicialSet D;
  D.max_dim = B.max_p;
  D.counts.resize(D.max_dim + 1);
  D.face.resize(D.max_dim + 1);
  D.deg.resize(D.max_dim + 1);
  D.labels.resize(D.max_dim + 1);
  for (int n = 0; n <= D.max_dim; ++n) {
    D.counts[n] = B.counts[n][n];
    D.labels[n] = B.labels[n][n];
    if (n >= 1) {
      D.face[n].assign(D.counts[n], std::vector<int>(n + 1, -1));
      for (int id = 0; id < D.counts[n]; ++id)
        for (int i = 0; i <= n; ++i)
          D.face[n][id][i] = B.v_face[n - 1][n][B.h_face[n][n][id][i]][i];
    }
    if (n < D.max_dim) {
      D.deg[n].assign(D.counts[n], std::vector<int>(n + 1, -1));
      for (int id = 0; id < D.counts[n]; ++id)
        for (int i = 0; i <= n; ++i)
          D.deg[n][id][i] = B.v_deg[n + 1][n][B.h_deg[n][n][id][i]][i];
    }
  }
  return D;
}

// ---------------------------------------------------------------------------
// Geometric nerve
// ---------------------------------------------------------------------------

namespace detail {

/// Index of the arrow i -> j in the category ordinal(n).
inline int ord_arrow(int n, int i, int j) { return i * (n + 1) - i * (i - 1) / 2 + (j - i); }

inline std::vector<int> lax_key(const LaxFromCat& u) {
  std::vector<int> k(u.obj_map.begin(), u.obj_map.end());
  k.push_back(-1);
  k.insert(k.end(), u.one_map.begin(), u.one_map.end());
  k.push_back(-1);
  for (const auto& [pr, cell] : u.structural) k.push_back(cell);
  return k;
}

/// Precomposition of a simplex of the geometric nerve (a normal lax functor
/// out of an ordinal) with an ordinal map.
inline LaxFromCat lax_act(const Fin2Category& T, const LaxFromCat& x, const OrdinalMap& a) {
  int n = x.source.n_objects - 1;
  int m = a.dom;
  if (a.cod != n) throw PreconditionError("lax_act: ordinal map does not match simplex dimension");
  LaxFromCat y;
  y.source = ordinal(m);
  y.target = T;
  y.obj_map.resize(m + 1);
  for (int i = 0; i <= m; ++i) y.obj_map[i] = x.obj_map[a(i)];
  y.one_map.assign(y.source.arrow_count(), -1);
  auto image_arrow = [&](int i, int j) {  // local 1-arrow for the edge i -> j of [m]
    if (a(i) == a(j)) return T.id1[x.obj_map[a(i)]];
    return x.one_map[ord_arrow(n, a(i), a(j))];
  };
  for (int i = 0; i <= m; ++i)
    for (int j = i; j <= m; ++j) y.one_map[ord_arrow(m, i, j)] = image_arrow(i, j);
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i) {
        int g = ord_arrow(m, j, k), f = ord_arrow(m, i, j);
        if (a(i) == a(j) || a(j) == a(k)) {
          ObjId s = y.obj_map[i], t = y.obj_map[k];
          y.structural[{g, f}] = T.hom(s, t).identity(image_arrow(i, k));
        } else {
          y.structural[{g, f}] =
              lax_structural(x, ord_arrow(n, a(j), a(k)), ord_arrow(n, a(i), a(j)));
        }
      }
  return y;
}

}  // namespace detail

/// The geometric nerve: n-simplices are normal lax functors out of the
/// ordinal [n] (objects, 1-arrows f_{ij}, and coherence 2-cells
/// a_{ijk}: f_{ik} => f_{jk} . f_{ij} subject to the cocycle condition);
/// the simplicial structure is precomposition with ordinal maps.
inline TruncatedSimplicialSet geometric_nerve(const Fin2Category& T, int N,
                                              long long budget = 5000000) {
  DenseSimplicialSet D;
  D.max_dim = N;
  D.counts.resize(N + 1);
  D.face.resize(N + 1);
  D.deg.resize(N + 1);
  D.labels.resize(N + 1);
  std::vector<std::vector<LaxFromCat>> simp(N + 1);
  std::vector<std::map<std::vector<int>, int>> index(N + 1);
  for (int n = 0; n <= N; ++n) {
    simp[n] = enumerate_lax_functors(ordinal(n), T, budget);
    for (int id = 0; id < (int)simp[n].size(); ++id)
      index[n][detail::lax_key(simp[n][id])] = id;
    D.counts[n] = (int)simp[n].size();
    for (const auto& x : simp[n]) {
      std::string lbl;
      for (int i = 0; i <= n; ++i) lbl += (i ? ">" : "") + T.obj_name(x.obj_map[i]);
      for (int i = 0; i < n; ++i) {
        int f = x.one_map[detail::ord_arrow(n, i, i + 1)];
        lbl += "," + T.one_name(x.obj_map[i], x.obj_map[i + 1], f);
      }
      D.labels[n].push_back(lbl);
    }
  }
  for (int n = 0; n <= N; ++n) {
    if (n >= 1) {
      D.face[n].assign(D.counts[n], std::vector<int>(n + 1, -1));
      for (int id = 0; id < D.counts[n]; ++id)
        for (int i = 0; i <= n; ++i)
          D.face[n][id][i] =
              index[n - 1].at(detail::lax_key(detail::lax_act(T, simp[n][id], delta_map(n, i))));
    }
    if (n < N) {
      D.deg[n].assign(D.counts[n], std::vector<int>(n + 1, -1));
      for (int id = 0; id < D.counts[n]; ++id)
        for (int i = 0; i <= n; ++i)
          D.deg[n][id][i] =
              index[n + 1].at(detail::lax_key(detail::lax_act(T, simp[n][id], sigma_map(n, i))));
    }
  }
  return compress_dense(D);
}

}  // namespace fincat

#endif

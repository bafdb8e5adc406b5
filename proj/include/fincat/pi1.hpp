#ifndef FINCAT_PI1_HPP
#define FINCAT_PI1_HPP

#include "fincat/homology.hpp"
#include "fincat/simplicial.hpp"

namespace fincat {

/// Edge-path presentation of the fundamental group: one generator per
/// nondegenerate 1-simplex outside a spanning tree, one relator per
/// nondegenerate 2-simplex. Words use signed letters, +(k+1) / -(k+1) for
/// generator k and its inverse.
struct Pi1Presentation {
  int n_generators = 0;
  std::vector<int> generator_edges;        // 1-simplex id behind each generator
  std::vector<std::vector<int>> relators;  // freely reduced, empties dropped
};

struct Pi1Result {
  Pi1Presentation presentation;
  int abelian_rank = 0;             // free rank of the abelianization
  std::vector<Int> abelian_torsion; // invariant factors >= 2
  bool certified_infinite = false;  // positive abelian rank
  bool order_known = false;
  long long order = 0;  // meaningful only when order_known
};

namespace detail {

/// Coset enumeration over the trivial subgroup (HLT strategy with
/// coincidence handling). Returns the group order, or nullopt when the
/// table exceeds `budget` cosets before closing.
class CosetEnumerator {
 public:
  CosetEnumerator(int n_generators, const std::vector<std::vector<int>>& relator_words,
                  int budget)
      : m(n_generators), budget(budget) {
    for (const auto& w : relator_words) {
      std::vector<int> r;
      r.reserve(w.size());
      for (int s : w) r.push_back(s > 0 ? 2 * (s - 1) : 2 * (-s - 1) + 1);
      if (!r.empty()) rels.push_back(std::move(r));
    }
  }

  std::optional<long long> run() {
    if (m == 0) return 1;
    new_coset();
    for (int a = 0; a < (int)tab.size(); ++a) {
      if (p[a] != a) continue;  // dead
      for (const auto& r : rels) {
        scan_and_fill(a, r);
        if (exhausted) return std::nullopt;
        if (rep(a) != a) break;  // merged away mid-processing
      }
      if (rep(a) != a) continue;
      for (int x = 0; x < 2 * m; ++x) {
        if (tab[a][x] < 0) define(a, x);
        if (exhausted) return std::nullopt;
      }
    }
    long long live = 0;
    for (int a = 0; a < (int)p.size(); ++a)
      if (p[a] == a) ++live;
    return live;
  }

 private:
  int m;
  int budget;
  bool exhausted = false;
  std::vector<std::vector<int>> rels;  // letters 2k / 2k+1 for gen / inverse
  std::vector<std::vector<int>> tab;   // tab[coset][letter], -1 undefined
  std::vector<int> p;                  // union-find, p[a] <= a
  std::deque<int> dead_queue;

  static int inv(int x) { return x ^ 1; }

  int new_coset() {
    if ((int)tab.size() >= budget) {
      exhausted = true;
      return -1;
    }
    tab.emplace_back(2 * m, -1);
    p.push_back((int)p.size());
    return (int)tab.size() - 1;
  }

  int rep(int k) {
    while (p[k] != k) {
      p[k] = p[p[k]];
      k = p[k];
    }
    return k;
  }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    p[b] = a;
    dead_queue.push_back(b);
  }

  void coincidence(int a, int b) {
    merge(a, b);
    while (!dead_queue.empty()) {
      int y = dead_queue.front();
      dead_queue.pop_front();
      for (int x = 0; x < 2 * m; ++x) {
        int d = tab[y][x];
        if (d < 0) continue;
        tab[d][inv(x)] = -1;  // drop the back-pointer into the dead coset
        int mu = rep(y), nu = rep(d);
        if (tab[mu][x] >= 0)
          merge(nu, tab[mu][x]);
        else if (tab[nu][inv(x)] >= 0)
          merge(mu, tab[nu][inv(x)]);
        else {
          tab[mu][x] = nu;
          tab[nu][inv(x)] = mu;
        }
      }
    }
  }

  void define(int a, int x) {
    int n = new_coset();
    if (n < 0) return;
    tab[a][x] = n;
    tab[n][inv(x)] = a;
  }

  void scan_and_fill(int a, const std::vector<int>& w) {
    int f = a, i = 0;
    int b = a, j = (int)w.size() - 1;
    while (true) {
      while (i <= j && tab[f][w[i]] >= 0) f = tab[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && tab[b][inv(w[j])] >= 0) b = tab[b][inv(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (j == i) {  // deduction closes the scan
        tab[f][w[i]] = b;
        tab[b][inv(w[i])] = f;
        return;
      }
      define(f, w[i]);
      if (exhausted) return;
    }
  }
};

}  // namespace detail

/// Fundamental group of a connected truncated simplicial set at `basepoint`.
/// Requires truncation >= 2 (relators live on 2-simplices). The order is
/// decided by coset enumeration when it closes within `coset_budget` cosets;
/// otherwise only the presentation and its abelianization are reported.
inline Pi1Result pi1(const TruncatedSimplicialSet& X, int basepoint = 0,
                     int coset_budget = 10000) {
  if (X.max_dim < 2)
    throw PreconditionError("pi1: truncation must keep dimensions up to 2");
  int nv = X.count(0);
  if (nv == 0) throw PreconditionError("pi1: empty complex");
  if (basepoint < 0 || basepoint >= nv) throw PreconditionError("pi1: basepoint out of range");

  int ne = X.count(1);
  auto tail = [&](int e) { return X.faces[1][e][1].base_id; };
  auto head = [&](int e) { return X.faces[1][e][0].base_id; };

  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, other endpoint)
  for (int e = 0; e < ne; ++e) {
    adj[tail(e)].push_back({e, head(e)});
    adj[head(e)].push_back({e, tail(e)});
  }
  std::vector<char> seen(nv, 0), in_tree(ne, 0);
  std::deque<int> bfs{basepoint};
  seen[basepoint] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    for (auto [e, w] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        in_tree[e] = 1;
        ++reached;
        bfs.push_back(w);
      }
  }
  if (reached != nv)
    throw PreconditionError("pi1: complex is not connected in degrees <= 1");

  Pi1Result R;
  std::vector<int> gen_of(ne, -1);
  for (int e = 0; e < ne; ++e)
    if (!in_tree[e]) {
      gen_of[e] = R.presentation.n_generators++;
      R.presentation.generator_edges.push_back(e);
    }

  auto letter = [&](const SimplexRef& F) -> int {
    if (F.base_dim == 0) return 0;  // degenerate face carries no letter
    int g = gen_of[F.base_id];
    return g < 0 ? 0 : g + 1;  // tree edges contract to nothing
  };
  for (int t = 0; t < X.count(2); ++t) {
    std::vector<int> w;
    if (int s = letter(X.faces[2][t][2])) w.push_back(s);
    if (int s = letter(X.faces[2][t][0])) w.push_back(s);
    if (int s = letter(X.faces[2][t][1])) w.push_back(-s);
    std::vector<int> red;  // free reduction
    for (int s : w) {
      if (!red.empty() && red.back() == -s)
        red.pop_back();
      else
        red.push_back(s);
    }
    if (!red.empty()) R.presentation.relators.push_back(std::move(red));
  }

  // abelianization via the exponent matrix
  int m = R.presentation.n_generators;
  int nr = (int)R.presentation.relators.size();
  std::vector<std::vector<Int>> E(m, std::vector<Int>(nr, 0));
  for (int r = 0; r < nr; ++r)
    for (int s : R.presentation.relators[r])
      E[s > 0 ? s - 1 : -s - 1][r] += (s > 0) ? 1 : -1;
  std::vector<Int> factors = smith_normal_form(E);
  R.abelian_rank = m - (int)factors.size();
  for (const Int& f : factors)
    if (f >= 2) R.abelian_torsion.push_back(f);
  R.certified_infinite = R.abelian_rank > 0;

  if (m == 0) {
    R.order_known = true;
    R.order = 1;
  } else if (!R.certified_infinite) {
    detail::CosetEnumerator tc(m, R.presentation.relators, coset_budget);
    if (auto n = tc.run()) {
      R.order_known = true;
      R.order = *n;
    }
  }
  return R;
}

}  // namespace fincat

#endif

#ifndef FINCAT_HOMOLOGY_HPP
#define FINCAT_HOMOLOGY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "fincat/simplicial.hpp"

namespace fincat {

using Int = boost::multiprecision::cpp_int;

/// Normalized chain complex of a truncated simplicial set: one generator per
/// nondegenerate simplex, boundaries drop the degenerate faces.
struct ChainComplex {
  std::vector<int> ranks;  // degrees 0..top
  // boundary[n] is a ranks[n-1] x ranks[n] integer matrix, n = 1..top
  std::vector<std::vector<std::vector<Int>>> boundary;
};

inline ChainComplex chain_complex(const TruncatedSimplicialSet& X, int top) {
  if (top > X.max_dim) throw PreconditionError("chain_complex: degree exceeds truncation");
  ChainComplex C;
  C.ranks.resize(top + 1);
  C.boundary.resize(top + 1);
  for (int n = 0; n <= top; ++n) C.ranks[n] = X.count(n);
  for (int n = 1; n <= top; ++n) {
    C.boundary[n].assign(C.ranks[n - 1], std::vector<Int>(C.ranks[n], 0));
    for (int id = 0; id < C.ranks[n]; ++id)
      for (int i = 0; i <= n; ++i) {
        const SimplexRef& F = X.faces[n][id][i];
        if (F.nondegenerate()) C.boundary[n][F.base_id][id] += (i % 2 == 0) ? 1 : -1;
      }
  }
  return C;
}

inline ValidationReport validate_complex(const ChainComplex& C) {
  ValidationReport r;
  for (size_t n = 2; n < C.boundary.size(); ++n) {
    // boundary[n-1] * boundary[n] must vanish
    for (int i = 0; i < C.ranks[n - 2]; ++i)
      for (int k = 0; k < C.ranks[n]; ++k) {
        Int s = 0;
        for (int j = 0; j < C.ranks[n - 1]; ++j)
          s += C.boundary[n - 1][i][j] * C.boundary[n][j][k];
        if (s != 0) {
          r.add("dd-nonzero", "boundary squared is nonzero in degree " + std::to_string(n));
          return r;
        }
      }
  }
  return r;
}

/// Invariant factors of an integer matrix (nonzero diagonal of the Smith
/// normal form, each positive and dividing the next). Classic pivoting
/// reduction; entries grow, hence arbitrary precision.
inline std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> M) {
  std::vector<Int> factors;
  int rows = (int)M.size();
  int cols = rows ? (int)M[0].size() : 0;
  int t = 0;
  while (t < rows && t < cols) {
    // locate a pivot of least absolute value in the remaining block
    int pr = -1, pc = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (M[i][j] != 0 && (pr < 0 || abs(M[i][j]) < best)) {
          best = abs(M[i][j]);
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(M[t], M[pr]);
    for (int i = 0; i < rows; ++i) std::swap(M[i][t], M[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        Int q = M[i][t] / M[t][t];
        for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) {  // remainder smaller than pivot: promote it
          std::swap(M[t], M[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        Int q = M[t][j] / M[t][t];
        for (int i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        if (M[t][j] != 0) {
          for (int i = t; i < rows; ++i) std::swap(M[i][t], M[i][j]);
          clean = false;
        }
      }
      if (clean) {
        // divisibility: the pivot must divide everything below and to the right
        for (int i = t + 1; i < rows && clean; ++i)
          for (int j = t + 1; j < cols && clean; ++j)
            if (M[i][j] % M[t][t] != 0) {
              for (int jj = t; jj < cols; ++jj) M[t][jj] += M[i][jj];
              clean = false;
            }
      }
    }
    if (M[t][t] < 0) M[t][t] = -M[t][t];
    factors.push_back(M[t][t]);
    ++t;
  }
  return factors;
}

struct DegreeHomology {
  int betti = 0;
  std::vector<Int> torsion;  // coefficients >= 2, each dividing the next
  bool operator==(const DegreeHomology& o) const {
    return betti == o.betti && torsion == o.torsion;
  }
};

struct HomologySummary {
  int k_max = -1;  // degrees 0..k_max are certified by the truncation used
  std::vector<DegreeHomology> degrees;
};

/// Integral homology of the normalized chains in degrees 0..k_max. Demands
/// k_max <= truncation - 1: degree-(k+1) chains are needed to present H_k.
inline HomologySummary homology(const TruncatedSimplicialSet& X, int k_max) {
  if (k_max < 0) throw PreconditionError("homology: negative degree bound");
  if (k_max > X.max_dim - 1)
    throw PreconditionError("homology: k_max " + std::to_string(k_max) +
                            " exceeds the reliable bound " + std::to_string(X.max_dim - 1) +
                            " of this truncation");
  ChainComplex C = chain_complex(X, k_max + 1);
  HomologySummary H;
  H.k_max = k_max;
  H.degrees.resize(k_max + 1);
  std::vector<int> rank(k_max + 2, 0);
  std::vector<std::vector<Int>> factors(k_max + 2);
  for (int n = 1; n <= k_max + 1; ++n) {
    factors[n] = smith_normal_form(C.boundary[n]);
    rank[n] = (int)factors[n].size();
  }
  for (int k = 0; k <= k_max; ++k) {
    DegreeHomology& d = H.degrees[k];
    d.betti = C.ranks[k] - rank[k] - rank[k + 1];
    for (const Int& f : factors[k + 1])
      if (f >= 2) d.torsion.push_back(f);
  }
  return H;
}

inline std::string homology_to_string(const HomologySummary& H) {
  std::ostringstream os;
  for (int k = 0; k <= H.k_max; ++k) {
    const DegreeHomology& d = H.degrees[k];
    os << "H_" << k << " = ";
    bool first = true;
    if (d.betti > 0) {
      os << "Z";
      if (d.betti > 1) os << "^" << d.betti;
      first = false;
    }
    for (const Int& t : d.torsion) {
      if (!first) os << " + ";
      os << "Z/" << t;
      first = false;
    }
    if (first) os << "0";
    os << "\n";
  }
  return os.str();
}

/// Degree-by-degree comparison; on failure the report names the first
/// disagreeing degree.
inline bool homology_equal(const HomologySummary& A, const HomologySummary& B, int k_max,
                           std::string* report = nullptr) {
  if (A.k_max < k_max || B.k_max < k_max) {
    if (report) *report = "comparison bound exceeds a certified range";
    return false;
  }
  for (int k = 0; k <= k_max; ++k)
    if (!(A.degrees[k] == B.degrees[k])) {
      if (report) {
        std::ostringstream os;
        os << "first disagreement in degree " << k << ": betti " << A.degrees[k].betti << " vs "
           << B.degrees[k].betti << ", torsion counts " << A.degrees[k].torsion.size() << " vs "
           << B.degrees[k].torsion.size();
        *report = os.str();
      }
      return false;
    }
  if (report) *report = "equal through degree " + std::to_string(k_max);
  return true;
}

/// Betti numbers with coefficients in F_p, by Gaussian elimination. A cheap
/// cross-check on the integral computation (and a CLI option).
inline std::vector<int> homology_mod(const TruncatedSimplicialSet& X, int k_max, long long p) {
  if (p < 2) throw PreconditionError("homology_mod: modulus must be at least 2");
  if (k_max > X.max_dim - 1)
    throw PreconditionError("homology_mod: k_max exceeds the reliable bound");
  ChainComplex C = chain_complex(X, k_max + 1);
  auto rank_mod = [&](const std::vector<std::vector<Int>>& M) {
    int rows = (int)M.size();
    int cols = rows ? (int)M[0].size() : 0;
    std::vector<std::vector<long long>> A(rows, std::vector<long long>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Int v = M[i][j] % p;
        if (v < 0) v += p;
        A[i][j] = (long long)v;
      }
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
      int piv = -1;
      for (int i = rank; i < rows; ++i)
        if (A[i][col] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(A[rank], A[piv]);
      // scale the pivot row to 1 via modular inverse (p need not be prime for
      // our use, but the CLI restricts to primes)
      long long inv = 1, base = A[rank][col] % p, e = p - 2;
      while (e > 0) {  // Fermat inverse
        if (e & 1) inv = (__int128)inv * base % p;
        base = (__int128)base * base % p;
        e >>= 1;
      }
      for (int j = col; j < cols; ++j) A[rank][j] = (__int128)A[rank][j] * inv % p;
      for (int i = 0; i < rows; ++i) {
        if (i == rank || A[i][col] == 0) continue;
        long long f = A[i][col];
        for (int j = col; j < cols; ++j)
          A[i][j] = ((A[i][j] - (__int128)f * A[rank][j]) % p + p) % p;
      }
      ++rank;
    }
    return rank;
  };
  std::vector<int> betti(k_max + 1);
  std::vector<int> rank(k_max + 2, 0);
  for (int n = 1; n <= k_max + 1; ++n) rank[n] = rank_mod(C.boundary[n]);
  for (int k = 0; k <= k_max; ++k) betti[k] = C.ranks[k] - rank[k] - rank[k + 1];
  return betti;
}

}  // namespace fincat

#endif

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"

namespace legfront {

// ---------------------------------------------------------------------------------------
// Stratification posets of planar fronts

enum class PosetKind { ZigzagInDisk, SaucerSlice, EmptyDisk };

inline const char* to_string(PosetKind k) {
  switch (k) {
    case PosetKind::ZigzagInDisk: return "zigzag";
    case PosetKind::SaucerSlice: return "saucer";
    case PosetKind::EmptyDisk: return "empty";
  }
  return "?";
}

inline PosetKind poset_kind_from(const std::string& s) {
  if (s == "zigzag") return PosetKind::ZigzagInDisk;
  if (s == "saucer") return PosetKind::SaucerSlice;
  if (s == "empty") return PosetKind::EmptyDisk;
  throw SchemaError("unknown poset '" + s + "' (expected zigzag, saucer or empty)");
}

struct Stratum {
  std::string name;
  int dim = 0;
};

struct PosetEdge {
  int from = 0, to = 0;  // stratum indices, from lies in the closure of to
  bool positive = false;
};

// Composition identity: edge ab followed by edge bc equals edge ac.
struct Relation {
  int ab = 0, bc = 0, ac = 0;
};

struct StrataPoset {
  PosetKind kind = PosetKind::EmptyDisk;
  std::vector<Stratum> strata;
  std::vector<PosetEdge> edges;  // also the enumeration order of the witness search
  std::vector<Relation> relations;

  int stratum(const std::string& n) const {
    for (std::size_t i = 0; i < strata.size(); ++i)
      if (strata[i].name == n) return static_cast<int>(i);
    throw SchemaError("unknown stratum '" + n + "'");
  }
  int edge(int a, int b) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].from == a && edges[i].to == b) return static_cast<int>(i);
    return -1;
  }
  std::string edge_name(int e) const {
    return strata[edges[e].from].name + "->" + strata[edges[e].to].name;
  }
  std::set<int> positive_edges() const {
    std::set<int> s;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].positive) s.insert(static_cast<int>(i));
    return s;
  }
};

namespace detail {

inline StrataPoset make_poset(PosetKind kind, std::vector<Stratum> strata,
                              const std::vector<std::array<std::string, 2>>& edge_list,
                              const std::set<std::array<std::string, 2>>& positive) {
  StrataPoset P;
  P.kind = kind;
  P.strata = std::move(strata);
  for (const auto& e : edge_list)
    P.edges.push_back({P.stratum(e[0]), P.stratum(e[1]), positive.count(e) > 0});
  // every length-2 path a -> b -> c with an edge a -> c gives a relation
  for (std::size_t i = 0; i < P.edges.size(); ++i)
    for (std::size_t j = 0; j < P.edges.size(); ++j) {
      if (P.edges[i].to != P.edges[j].from) continue;
      const int ac = P.edge(P.edges[i].from, P.edges[j].to);
      if (ac < 0) throw DomainError("poset is not closed under composition");
      P.relations.push_back({static_cast<int>(i), static_cast<int>(j), ac});
    }
  return P;
}

}  // namespace detail

// Zig-zag: cusps c1 (right) and c2 (left), arcs e1 -> c1 -> e2 -> c2 -> e3, faces f1 and f2;
// f2 lies above e1 and e3, f1 lies above e2.
// Saucer slice: cusps c1 (left) and c2 (right), arcs top and bottom, faces inner and outer.
inline StrataPoset build_poset(PosetKind kind) {
  switch (kind) {
    case PosetKind::ZigzagInDisk:
      return detail::make_poset(
          kind,
          {{"c1", 0}, {"c2", 0}, {"e1", 1}, {"e2", 1}, {"e3", 1}, {"f1", 2}, {"f2", 2}},
          {{"c1", "e1"}, {"e1", "f1"}, {"c1", "f1"}, {"e1", "f2"}, {"c1", "f2"},
           {"c1", "e2"}, {"e2", "f1"}, {"e2", "f2"}, {"c2", "e2"}, {"c2", "f1"},
           {"c2", "f2"}, {"c2", "e3"}, {"e3", "f1"}, {"e3", "f2"}},
          {{"e1", "f2"}, {"c1", "e2"}, {"e2", "f1"}, {"c2", "e3"}, {"e3", "f2"}});
    case PosetKind::SaucerSlice:
      return detail::make_poset(
          kind,
          {{"c1", 0}, {"c2", 0}, {"top", 1}, {"bottom", 1}, {"inner", 2}, {"outer", 2}},
          {{"c1", "top"}, {"top", "inner"}, {"c1", "inner"}, {"top", "outer"}, {"c1", "outer"},
           {"c1", "bottom"}, {"bottom", "inner"}, {"bottom", "outer"}, {"c2", "top"},
           {"c2", "inner"}, {"c2", "outer"}, {"c2", "bottom"}},
          {{"top", "outer"}, {"bottom", "inner"}, {"c1", "top"}, {"c1", "inner"}, {"c2", "top"},
           {"c2", "inner"}});
    case PosetKind::EmptyDisk:
      return detail::make_poset(kind, {{"f", 2}}, {}, {});
  }
  throw DomainError("unknown poset kind");
}

// ---------------------------------------------------------------------------------------
// Matrices over F_p

struct FpMatrix {
  int rows = 0, cols = 0;
  std::vector<int> a;  // row-major, entries in [0, p)

  int at(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
  bool operator==(const FpMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator<(const FpMatrix& o) const {
    return std::tie(rows, cols, a) < std::tie(o.rows, o.cols, o.a);
  }
};

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline FpMatrix fp_mul(const FpMatrix& A, const FpMatrix& B, int p) {
  FpMatrix C{A.rows, B.cols, std::vector<int>(static_cast<std::size_t>(A.rows * B.cols), 0)};
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const int v = A.at(i, k);
      if (!v) continue;
      for (int j = 0; j < B.cols; ++j)
        C.a[static_cast<std::size_t>(i * C.cols + j)] = (C.a[static_cast<std::size_t>(i * C.cols + j)] + v * B.at(k, j)) % p;
    }
  return C;
}

inline int fp_inv(int v, int p) {
  int r = 1, b = v % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<int>(1LL * r * b % p);
    b = static_cast<int>(1LL * b * b % p);
    e >>= 1;
  }
  return r;
}

inline int fp_rank(FpMatrix M, int p) {
  int rank = 0;
  for (int c = 0; c < M.cols && rank < M.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < M.rows; ++r)
      if (M.at(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < M.cols; ++j) std::swap(M.a[static_cast<std::size_t>(piv * M.cols + j)], M.a[static_cast<std::size_t>(rank * M.cols + j)]);
    const int inv = fp_inv(M.at(rank, c), p);
    for (int r = 0; r < M.rows; ++r) {
      if (r == rank || !M.at(r, c)) continue;
      const int f = M.at(r, c) * inv % p;
      for (int j = 0; j < M.cols; ++j) {
        auto& x = M.a[static_cast<std::size_t>(r * M.cols + j)];
        x = ((x - f * M.at(rank, j)) % p + p) % p;
      }
    }
    ++rank;
  }
  return rank;
}

inline bool fp_bijective(const FpMatrix& M, int p) { return M.rows == M.cols && fp_rank(M, p) == M.rows; }

inline FpMatrix fp_identity(int n) {
  FpMatrix I{n, n, std::vector<int>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) I.a[static_cast<std::size_t>(i * n + i)] = 1;
  return I;
}

inline FpMatrix fp_inverse(const FpMatrix& M, int p) {
  if (!fp_bijective(M, p)) throw DomainError("matrix is not invertible");
  const int n = M.rows;
  FpMatrix A = M, I = fp_identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (!A.at(piv, c)) ++piv;
    for (int j = 0; j < n; ++j) {
      std::swap(A.a[static_cast<std::size_t>(piv * n + j)], A.a[static_cast<std::size_t>(c * n + j)]);
      std::swap(I.a[static_cast<std::size_t>(piv * n + j)], I.a[static_cast<std::size_t>(c * n + j)]);
    }
    const int inv = fp_inv(A.at(c, c), p);
    for (int j = 0; j < n; ++j) {
      A.a[static_cast<std::size_t>(c * n + j)] = A.at(c, j) * inv % p;
      I.a[static_cast<std::size_t>(c * n + j)] = I.at(c, j) * inv % p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || !A.at(r, c)) continue;
      const int f = A.at(r, c);
      for (int j = 0; j < n; ++j) {
        A.a[static_cast<std::size_t>(r * n + j)] = ((A.at(r, j) - f * A.at(c, j)) % p + p) % p;
        I.a[static_cast<std::size_t>(r * n + j)] = ((I.at(r, j) - f * I.at(c, j)) % p + p) % p;
      }
    }
  }
  return I;
}

// All rows x cols matrices over F_p in lexicographic order of their row-major entries.
inline std::vector<FpMatrix> all_matrices(int rows, int cols, int p, bool bijective_only) {
  const int n = rows * cols;
  std::vector<FpMatrix> out;
  FpMatrix M{rows, cols, std::vector<int>(static_cast<std::size_t>(n), 0)};
  while (true) {
    if (!bijective_only || fp_bijective(M, p)) out.push_back(M);
    int k = n - 1;
    while (k >= 0 && ++M.a[static_cast<std::size_t>(k)] == p) M.a[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Degree-0 representations

struct SheafRep {
  StrataPoset poset;
  int p = 2;
  std::vector<int> dims;         // per stratum
  std::vector<FpMatrix> maps;    // per edge, dims[to] x dims[from]
};

inline void check_rep(const SheafRep& r) {
  if (!is_prime(r.p)) throw DomainError("field characteristic must be prime");
  if (r.dims.size() != r.poset.strata.size()) throw SchemaError("stalk dimensions do not match strata");
  if (r.maps.size() != r.poset.edges.size()) throw SchemaError("maps do not match edges");
  for (int d : r.dims)
    if (d < 0) throw SchemaError("negative stalk dimension");
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& E = r.poset.edges[e];
    const auto& M = r.maps[e];
    if (M.rows != r.dims[E.to] || M.cols != r.dims[E.from] ||
        M.a.size() != static_cast<std::size_t>(M.rows * M.cols))
      throw SchemaError("map " + r.poset.edge_name(static_cast<int>(e)) + " has the wrong shape");
    for (int v : M.a)
      if (v < 0 || v >= r.p) throw SchemaError("map entry outside F_p");
  }
  for (const auto& rel : r.poset.relations) {
    if (!(fp_mul(r.maps[rel.bc], r.maps[rel.ab], r.p) == r.maps[rel.ac]))
      throw DomainError("relation fails: " + r.poset.edge_name(rel.ab) + " then " +
                        r.poset.edge_name(rel.bc) + " differs from " + r.poset.edge_name(rel.ac));
  }
}

struct MicrosupportResult {
  std::set<int> failing;  // edge indices whose restriction is not bijective
  bool zero_section_only = true;
};

inline MicrosupportResult microsupport(const SheafRep& r) {
  check_rep(r);
  MicrosupportResult m;
  for (std::size_t e = 0; e < r.maps.size(); ++e)
    if (!fp_bijective(r.maps[e], r.p)) m.failing.insert(static_cast<int>(e));
  m.zero_section_only = m.failing.empty();
  return m;
}

// Constant sheaf: every stalk F_p^d, every map the identity.
inline SheafRep constant_sheaf(const StrataPoset& P, int p = 2, int d = 1) {
  SheafRep r{P, p, std::vector<int>(P.strata.size(), d), {}};
  for (std::size_t e = 0; e < P.edges.size(); ++e) r.maps.push_back(fp_identity(d));
  return r;
}

// Stalk F_p on the chosen strata, zero elsewhere; maps are identities between nonzero stalks.
inline SheafRep indicator_sheaf(const StrataPoset& P, const std::set<std::string>& support, int p = 2) {
  SheafRep r{P, p, std::vector<int>(P.strata.size(), 0), {}};
  for (const auto& n : support) r.dims[static_cast<std::size_t>(P.stratum(n))] = 1;
  for (const auto& E : P.edges) {
    const int a = r.dims[E.from], b = r.dims[E.to];
    r.maps.push_back(a && b ? fp_identity(1) : FpMatrix{b, a, std::vector<int>(static_cast<std::size_t>(a * b), 0)});
  }
  return r;
}

// ---------------------------------------------------------------------------------------
// Exhaustive witness search

struct Certificate {
  bool found = false;
  int rank = 0;
  std::optional<SheafRep> witness;
  std::set<int> failing;
  long long candidates = 0;  // matrices tried

  std::string verdict() const {
    return found ? std::string("NonLooseWitnessFound") : "NoWitnessAtRank(" + std::to_string(rank) + ")";
  }
};

constexpr long long kDefaultBudget = 100000000;

inline long long budget_from_env() {
  if (const char* s = std::getenv("LEGFRONT_BUDGET")) {
    char* end = nullptr;
    const long long v = std::strtoll(s, &end, 10);
    if (end == s || *end != '\0' || v <= 0) throw SchemaError("LEGFRONT_BUDGET must be a positive integer");
    return v;
  }
  return kDefaultBudget;
}

// Stalk-dimension vectors in lexicographic order; for each, edge matrices in edge order, each
// edge's candidates in lexicographic order. Edges off the positive set must be bijective and
// relations are checked as soon as their three edges are assigned.
inline Certificate search_witness(const StrataPoset& P, int max_rank, int p, long long budget = -1) {
  if (max_rank < 1) throw DomainError("rank bound must be at least 1");
  if (!is_prime(p)) throw DomainError("field characteristic must be prime");
  if (budget < 0) budget = budget_from_env();
  Certificate cert;
  cert.rank = max_rank;
  const std::size_t ns = P.strata.size(), ne = P.edges.size();

  std::map<std::array<int, 3>, std::vector<FpMatrix>> cache;
  auto cands = [&](int rows, int cols, bool bij) -> const std::vector<FpMatrix>& {
    auto key = std::array<int, 3>{rows, cols, bij ? 1 : 0};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, all_matrices(rows, cols, p, bij)).first;
    return it->second;
  };
  // relations that become checkable once edge e is assigned
  std::vector<std::vector<int>> ready(ne);
  for (std::size_t k = 0; k < P.relations.size(); ++k) {
    const auto& r = P.relations[k];
    ready[static_cast<std::size_t>(std::max({r.ab, r.bc, r.ac}))].push_back(static_cast<int>(k));
  }

  std::vector<int> dims(ns, 0);
  std::vector<FpMatrix> maps(ne);
  bool done = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t e) {
    if (done) return;
    if (e == ne) {
      std::set<int> failing;
      for (std::size_t k = 0; k < ne; ++k)
        if (P.edges[k].positive && !fp_bijective(maps[k], p)) failing.insert(static_cast<int>(k));
      if (!failing.empty()) {
        cert.found = true;
        cert.failing = failing;
        cert.witness = SheafRep{P, p, dims, maps};
        done = true;
      }
      return;
    }
    const auto& E = P.edges[e];
    const auto& list = cands(dims[E.to], dims[E.from], !E.positive);
    for (const auto& M : list) {
      if (++cert.candidates > budget)
        throw BudgetError("witness search exceeded its budget of " + std::to_string(budget) +
                          " candidate matrices; lower the rank or the field size");
      maps[e] = M;
      bool ok = true;
      for (int k : ready[e]) {
        const auto& r = P.relations[static_cast<std::size_t>(k)];
        if (!(fp_mul(maps[r.bc], maps[r.ab], p) == maps[r.ac])) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(e + 1);
      if (done) return;
    }
  };

  while (!done) {
    bool square = true;
    for (const auto& E : P.edges)
      if (!E.positive && dims[E.from] != dims[E.to]) square = false;
    if (square) dfs(0);
    if (done) break;
    int k = static_cast<int>(ns) - 1;
    while (k >= 0 && ++dims[static_cast<std::size_t>(k)] > max_rank) dims[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return cert;
}

// Edges forced bijective for every representation whose failing set is inside the positive
// set: start from the non-positive edges and close under 2-of-3 on the relations.
inline std::set<int> forced_iso_closure(const StrataPoset& P) {
  std::set<int> forced;
  for (std::size_t e = 0; e < P.edges.size(); ++e)
    if (!P.edges[e].positive) forced.insert(static_cast<int>(e));
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& r : P.relations) {
      const int es[3] = {r.ab, r.bc, r.ac};
      int unknown = -1, known = 0;
      for (int e : es) {
        if (forced.count(e))
          ++known;
        else
          unknown = e;
      }
      if (known == 2 && unknown >= 0) {
        forced.insert(unknown);
        grew = true;
      }
    }
  }
  return forced;
}

}  // namespace legfront

#include "pc/refine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "pc/errors.hpp"

namespace pc {

long padic_valuation(const Scalar& x, long p) {
  if (x.is_zero()) throw MathError("valuation of zero");
  auto val = [p](mpz_class n) {
    long v = 0;
    n = abs(n);
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    return v;
  };
  return val(x.value().get_num()) - val(x.value().get_den());
}

std::vector<std::string> FilteredPhiModule::validate() const {
  std::vector<std::string> out;
  const std::size_t d = dim();
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) out.push_back("p is not a prime");
  if (d == 0) out.push_back("dimension 0");
  for (std::size_t i = 0; i < d; ++i) {
    if (phi[i].modulus() != 0) out.push_back("eigenvalues must be rational");
    if (phi[i].is_zero()) out.push_back("eigenvalue " + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (phi[i] == phi[j]) out.push_back("eigenvalues " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
  }
  if (weights.size() != d) out.push_back("need one weight per eigenvalue");
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (weights[i] <= weights[i - 1]) out.push_back("weights must be strictly increasing");
  if (flag.size() != d) {
    out.push_back("need one flag vector per eigenvalue");
  } else {
    bool shapes = true;
    for (const auto& w : flag)
      if (w.size() != d) shapes = false;
    if (!shapes) {
      out.push_back("flag vectors have the wrong length");
    } else {
      QMatrix m(d, d);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) m(r, c) = flag[c][r];
      if (rank(m) != d) out.push_back("flag vectors are linearly dependent");
    }
  }
  return out;
}

void FilteredPhiModule::require_valid() const {
  auto v = validate();
  if (!v.empty()) throw SchemaError(v.front());
}

namespace {

std::size_t span_rank(const std::vector<Vec>& vs, std::size_t d) {
  if (vs.empty()) return 0;
  QMatrix m(vs.size(), d);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = vs[i][j];
  return rank(m);
}

// Jump multiset (sorted) of the filtration induced on span(vs), vs independent.
std::vector<long> jumps(const FilteredPhiModule& D, const std::vector<Vec>& vs) {
  const std::size_t d = D.dim();
  auto inter = [&](std::size_t i) {  // dim(W cap Fil^{k_{i+1}}) with Fil = span(flag[i..])
    std::vector<Vec> all = vs;
    all.insert(all.end(), D.flag.begin() + static_cast<long>(i), D.flag.end());
    return vs.size() + (d - i) - span_rank(all, d);
  };
  std::vector<long> out;
  std::size_t prev = inter(0);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t next = i + 1 < d ? inter(i + 1) : 0;
    for (std::size_t c = next; c < prev; ++c) out.push_back(D.weights[i]);
    prev = next;
  }
  return out;
}

std::vector<Vec> coordinate_vectors(std::size_t d, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  for (auto i : idx) out.push_back(unit_vector(d, i));
  return out;
}

void require_refinement(const FilteredPhiModule& D, const Refinement& ref) {
  D.require_valid();
  Refinement sorted = ref;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != D.dim()) throw SchemaError("refinement is not an ordering of the eigenvalues");
  if (sorted.size() != D.dim()) throw SchemaError("refinement is not an ordering of the eigenvalues");
}

}  // namespace

long hodge_number(const FilteredPhiModule& D, const std::vector<std::size_t>& subset) {
  auto j = jumps(D, coordinate_vectors(D.dim(), subset));
  return std::accumulate(j.begin(), j.end(), 0L);
}

long newton_number(const FilteredPhiModule& D, const std::vector<std::size_t>& subset) {
  long t = 0;
  for (auto i : subset) t += padic_valuation(D.phi[i], D.p);
  return t;
}

AdmissibilityReport check_weak_admissibility(const FilteredPhiModule& D) {
  D.require_valid();
  const std::size_t d = D.dim();
  AdmissibilityReport rep;
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), std::size_t{0});
  rep.totals_equal = newton_number(D, all) == hodge_number(D, all);
  rep.ok = rep.totals_equal;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << d); ++mask) {
    std::vector<std::size_t> sub;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) sub.push_back(i);
    if (newton_number(D, sub) < hodge_number(D, sub)) {
      rep.ok = false;
      rep.violating_subset = sub;
      break;
    }
  }
  return rep;
}

std::vector<Refinement> enumerate_refinements(const FilteredPhiModule& D) {
  D.require_valid();
  Refinement r(D.dim());
  std::iota(r.begin(), r.end(), std::size_t{0});
  std::vector<Refinement> out;
  do out.push_back(r);
  while (std::next_permutation(r.begin(), r.end()));
  return out;
}

std::vector<long> induced_weights(const FilteredPhiModule& D, const Refinement& ref) {
  require_refinement(D, ref);
  std::vector<long> s;
  std::multiset<long> prev;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    auto j = jumps(D, coordinate_vectors(D.dim(), Refinement(ref.begin(), ref.begin() + static_cast<long>(i))));
    std::multiset<long> cur(j.begin(), j.end());
    for (auto x : prev) cur.erase(cur.find(x));
    s.push_back(*cur.begin());
    prev.clear();
    prev.insert(j.begin(), j.end());
  }
  return s;
}

NonCriticality non_criticality(const FilteredPhiModule& D, const Refinement& ref) {
  require_refinement(D, ref);
  const std::size_t d = D.dim();
  NonCriticality out;
  out.by_ranks = true;
  for (std::size_t i = 1; i <= d; ++i) {
    auto vs = coordinate_vectors(d, Refinement(ref.begin(), ref.begin() + static_cast<long>(i)));
    vs.insert(vs.end(), D.flag.begin() + static_cast<long>(i), D.flag.end());
    if (span_rank(vs, d) != d) out.by_ranks = false;
  }
  out.by_weights = induced_weights(D, ref) == D.weights;
  return out;
}

bool is_non_critical(const FilteredPhiModule& D, const Refinement& ref) {
  auto nc = non_criticality(D, ref);
  if (!nc.agree()) throw MathError("non-criticality criteria disagree");
  return nc.by_ranks;
}

bool is_numerically_non_critical(const FilteredPhiModule& D, const Refinement& ref) {
  require_refinement(D, ref);
  const auto& k = D.weights;
  long lhs = 0, prefix_k = 0;
  for (std::size_t i = 0; i + 1 < ref.size(); ++i) {
    lhs += padic_valuation(D.phi[ref[i]], D.p);
    // k_1 + ... + k_{i-1} + k_{i+1} in 1-based terms
    if (!(lhs < prefix_k + k[i + 1])) return false;
    prefix_k += k[i];
  }
  return true;
}

bool is_regular(const FilteredPhiModule& D, const Refinement& ref) {
  require_refinement(D, ref);
  const std::size_t d = D.dim();
  for (std::size_t i = 1; i <= d; ++i) {
    Scalar target(1);
    for (std::size_t j = 0; j < i; ++j) target *= D.phi[ref[j]];
    std::size_t hits = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != i) continue;
      Scalar prod(1);
      for (std::size_t j = 0; j < d; ++j)
        if (mask >> j & 1) prod *= D.phi[j];
      if (prod == target) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

namespace {

int check_partition(const std::vector<std::vector<int>>& sets, const char* what) {
  int m = 0;
  for (const auto& s : sets) m += static_cast<int>(s.size());
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (const auto& s : sets)
    for (int x : s) {
      if (x < 1 || x > m || seen[static_cast<std::size_t>(x)])
        throw SchemaError(std::string(what) + " sets do not partition {1..m}");
      seen[static_cast<std::size_t>(x)] = true;
    }
  return m;
}

std::set<int> union_of(const std::vector<std::vector<int>>& sets, std::uint64_t mask) {
  std::set<int> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (mask >> i & 1) out.insert(sets[i].begin(), sets[i].end());
  return out;
}

bool orthogonal(const std::vector<std::vector<int>>& W, const std::vector<std::vector<int>>& R) {
  const std::size_t r = W.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << r); ++mask)
    if (union_of(W, mask) == union_of(R, mask)) return false;
  return true;
}

}  // namespace

SigmaReport sigma_permutation(const BlockRefinementData& data) {
  std::vector<std::vector<int>> Rs, Ws;
  for (const auto& b : data) {
    if (b.R.size() != b.W.size()) throw MathError("block with |R_i| != |W_i|");
    Rs.push_back(b.R);
    Ws.push_back(b.W);
  }
  const int m = check_partition(Rs, "R");
  check_partition(Ws, "W");
  SigmaReport rep;
  rep.sigma.assign(static_cast<std::size_t>(m), 0);
  bool singletons = true;
  for (const auto& b : data) {
    auto R = b.R, W = b.W;
    std::sort(R.begin(), R.end());
    std::sort(W.begin(), W.end());
    for (std::size_t j = 0; j < R.size(); ++j) rep.sigma[static_cast<std::size_t>(R[j] - 1)] = W[j];
    if (b.R.size() != 1) singletons = false;
  }
  int len = 0, x = 1;
  do {
    x = rep.sigma[static_cast<std::size_t>(x - 1)];
    ++len;
  } while (x != 1);
  rep.transitive = len == m;
  bool identity = true;
  for (int i = 1; i <= m; ++i)
    if (rep.sigma[static_cast<std::size_t>(i - 1)] != i) identity = false;
  if (singletons && identity)
    rep.classification = "ordinary";
  else if (rep.transitive)
    rep.classification = "anti-ordinary";
  else
    rep.classification = "neither";
  return rep;
}

bool check_WP_neq_RP(const BlockRefinementData& data) {
  std::vector<std::vector<int>> Rs, Ws;
  for (const auto& b : data) {
    Rs.push_back(b.R);
    Ws.push_back(b.W);
  }
  check_partition(Rs, "R");
  check_partition(Ws, "W");
  return orthogonal(Ws, Rs);
}

std::vector<std::vector<int>> orthogonal_partition(const std::vector<std::vector<int>>& W, const OrthogonalOptions& opt) {
  const int m = check_partition(W, "W");
  const std::size_t r = W.size();
  for (const auto& w : W)
    if (w.empty()) throw SchemaError("empty block");
  if (!opt.pin_ends) {
    if (r <= 1) return W;
    // t_i = min W_i goes to R_{i-1} (indices mod r), then fill in increasing order.
    std::vector<std::vector<int>> R(r);
    std::set<int> used;
    for (std::size_t i = 0; i < r; ++i) {
      int t = *std::min_element(W[(i + 1) % r].begin(), W[(i + 1) % r].end());
      R[i].push_back(t);
      used.insert(t);
    }
    int next = 1;
    for (std::size_t i = 0; i < r; ++i)
      while (R[i].size() < W[i].size()) {
        while (used.count(next)) ++next;
        R[i].push_back(next);
        used.insert(next);
      }
    for (auto& b : R) std::sort(b.begin(), b.end());
    if (!orthogonal(W, R)) throw MathError("orthogonal partition construction failed");
    return R;
  }

  if (r < 2 || W.front().size() != 1 || W.back().size() != 1) throw MathError("pinEnds infeasible");
  std::vector<std::vector<int>> R(r);
  R.front() = {1};
  R.back() = {m};
  std::vector<int> rest;
  for (int x = 2; x < m; ++x) rest.push_back(x);
  std::vector<bool> taken(rest.size(), false);
  // Depth-first assignment of the middle values, block by block in increasing order.
  std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t blk, std::size_t from) -> bool {
    if (blk + 1 >= r) return orthogonal(W, R);
    if (R[blk].size() == W[blk].size()) return fill(blk + 1, 0);
    for (std::size_t i = from; i < rest.size(); ++i) {
      if (taken[i]) continue;
      taken[i] = true;
      R[blk].push_back(rest[i]);
      if (fill(blk, i + 1)) return true;
      R[blk].pop_back();
      taken[i] = false;
    }
    return false;
  };
  if (!fill(1, 0)) throw MathError("pinEnds infeasible");
  return R;
}

std::optional<std::vector<std::vector<std::size_t>>> almost_tempered_partition(const UnramifiedSpectrum& S) {
  const auto& X = S.X;
  if (X.empty()) return std::vector<std::vector<std::size_t>>{};
  mpq_class c = 0;
  for (const auto& x : X) c += x.exp.value();
  c /= static_cast<long>(X.size());
  std::map<std::string, std::vector<std::size_t>> by_tag;
  for (std::size_t i = 0; i < X.size(); ++i) by_tag[X[i].tag].push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [tag, idx] : by_tag) {
    std::vector<bool> used(X.size(), false);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return X[a].exp.value() > X[b].exp.value() || (X[a].exp.value() == X[b].exp.value() && a < b);
    });
    for (std::size_t top : idx) {
      if (used[top]) continue;
      mpq_class len = 2 * (X[top].exp.value() - c) + 1;
      if (len.get_den() != 1 || len <= 0) return std::nullopt;
      std::vector<std::size_t> block;
      for (long k = 0; k < len.get_num().get_si(); ++k) {
        mpq_class want = X[top].exp.value() - k;
        auto it = std::find_if(idx.begin(), idx.end(), [&](std::size_t i) { return !used[i] && X[i].exp.value() == want; });
        if (it == idx.end()) return std::nullopt;
        used[*it] = true;
        block.push_back(*it);
      }
      blocks.push_back(std::move(block));
    }
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
  });
  return blocks;
}

AccessibleRefinements accessible_refinements(const UnramifiedSpectrum& S, std::size_t max_listed) {
  auto blocks = almost_tempered_partition(S);
  if (!blocks) throw MathError("not almost tempered");
  const std::size_t m = S.X.size();
  mpz_class count = factorial(static_cast<long>(m));
  for (const auto& b : *blocks) count /= factorial(static_cast<long>(b.size()));
  AccessibleRefinements out;
  out.count = count.get_str();
  if (count > static_cast<unsigned long>(max_listed)) return out;
  std::vector<std::size_t> labels;
  for (std::size_t l = 0; l < blocks->size(); ++l) labels.insert(labels.end(), (*blocks)[l].size(), l);
  do {
    std::vector<std::size_t> pos(blocks->size(), 0), ord;
    for (auto l : labels) ord.push_back((*blocks)[l][pos[l]++]);
    out.orderings.push_back(std::move(ord));
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

}  // namespace pc

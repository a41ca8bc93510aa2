#include "confspace/modp.hpp"

#include <algorithm>
#include <set>

#include "confspace/error.hpp"
#include "confspace/forest.hpp"

namespace confspace::modp {

namespace {

void require_prime(std::uint32_t p) {
  if (!linalg::is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
}

void require_odd_prime(std::uint32_t p) {
  require_prime(p);
  if (p == 2) throw UnsupportedDomain("p must be an odd prime");
}

DenseMatrixFp permutation_matrix(const Permutation& g, std::uint32_t p) {
  DenseMatrixFp m(g.size(), g.size(), p);
  for (std::size_t i = 0; i < g.size(); ++i) m.set(g[i] - 1, i, 1);
  return m;
}

DenseMatrixFp sigma_power_sum(const DenseMatrixFp& sigma, std::uint32_t count) {
  // 1 + sigma + ... + sigma^{count-1}; sigma on the left keeps the products cheap
  auto id = DenseMatrixFp::identity(sigma.rows(), sigma.prime());
  DenseMatrixFp power = id, sum = id;
  for (std::uint32_t i = 1; i < count; ++i) {
    power = sigma * power;
    sum = sum + power;
  }
  return sum;
}

std::vector<std::vector<int>> image_partition(const std::vector<std::vector<int>>& blocks, const Permutation& g) {
  std::vector<std::vector<int>> out;
  for (const auto& b : blocks) {
    std::vector<int> img;
    for (int x : b) img.push_back(g[x - 1]);
    std::sort(img.begin(), img.end());
    out.push_back(std::move(img));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> sorted_partition(const forest::Forest& f) {
  auto blocks = forest::forest_partition(f);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace

GModule::GModule(std::string name, std::uint32_t p, DenseMatrixFp sigma, std::vector<DenseMatrixFp> taus)
    : name_(std::move(name)), p_(p), sigma_(std::move(sigma)), taus_(std::move(taus)) {
  require_prime(p_);
  if (sigma_.prime() != p_ || sigma_.rows() != sigma_.cols()) throw InvalidArgument("sigma must be square over F_p");
  if (!taus_.empty() && taus_.size() != p_ - 1) throw InvalidArgument("need exactly p-1 Coxeter generators");
  for (const auto& t : taus_)
    if (t.prime() != p_ || t.rows() != dim() || t.cols() != dim())
      throw InvalidArgument("Coxeter generator matrices must match sigma");
}

GModule GModule::trivial(std::uint32_t p, bool twist) {
  require_prime(p);
  std::vector<DenseMatrixFp> taus(p - 1, DenseMatrixFp::identity(1, p).scaled(twist ? -1 : 1));
  auto sigma = DenseMatrixFp::identity(1, p).scaled(twist ? permutation_sign(long_cycle(p)) : 1);
  return GModule(twist ? "sign" : "trivial", p, sigma, std::move(taus));
}

GModule GModule::permutation(std::uint32_t p, bool twist) {
  require_prime(p);
  const int k = static_cast<int>(p);
  const int s = twist ? -1 : 1;
  std::vector<DenseMatrixFp> taus;
  for (int i = 1; i < k; ++i) taus.push_back(permutation_matrix(transposition(k, i, i + 1), p).scaled(s));
  auto sigma = permutation_matrix(long_cycle(k), p).scaled(twist ? permutation_sign(long_cycle(k)) : 1);
  return GModule(twist ? "permutation-twisted" : "permutation", p, sigma, std::move(taus));
}

DenseMatrixFp GModule::rho(const Permutation& g) const {
  if (taus_.empty()) throw UnsupportedDomain("module '" + name_ + "' carries only the cyclic action");
  if (g.size() != p_) throw InvalidArgument("rho: permutation must act on 1..p");
  check_permutation(g);
  auto m = DenseMatrixFp::identity(dim(), p_);
  auto word = adjacent_word(g);
  // g = t_{w_1} ... t_{w_m}; build from the right so each step multiplies by a sparse matrix
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = taus_[*it - 1] * m;
  return m;
}

DenseMatrixFp GModule::norm() const { return sigma_power_sum(sigma_, p_); }

void GModule::validate(bool coxeter) const {
  const auto id = DenseMatrixFp::identity(dim(), p_);
  DenseMatrixFp power = id;
  for (std::uint32_t i = 0; i < p_; ++i) power = sigma_ * power;
  if (!(power == id)) throw ValidationError("module '" + name_ + "': sigma^p is not the identity");
  if (taus_.empty()) return;
  DenseMatrixFp prod = id;
  for (auto it = taus_.rbegin(); it != taus_.rend(); ++it) prod = *it * prod;
  if (!(prod == sigma_)) throw ValidationError("module '" + name_ + "': sigma differs from t_1 t_2 ... t_{p-1}");
  if (!coxeter) return;
  const std::size_t m = taus_.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(taus_[i] * taus_[i] == id))
      throw ValidationError("module '" + name_ + "': t_" + std::to_string(i + 1) + " is not an involution");
    for (std::size_t j = i + 1; j < m; ++j) {
      auto a = taus_[i] * taus_[j];
      auto cube = j == i + 1 ? a * (a * a) : a * a;
      if (!(cube == id))
        throw ValidationError("module '" + name_ + "': Coxeter relation fails for t_" + std::to_string(i + 1) +
                              ", t_" + std::to_string(j + 1));
    }
  }
}

GModule conf_module(std::uint32_t p, int n, int t, bool twist) {
  require_prime(p);
  if (n < 1) throw InvalidArgument("n must be positive");
  const int k = static_cast<int>(p);
  const int step = n - 1;
  const bool ok = step == 0 ? t == 0 : (t >= 0 && t % step == 0 && t <= step * (k - 1));
  if (!ok) throw InvalidArgument("degree t must be a multiple of n-1 in [0, (n-1)(p-1)]");
  const int s = twist ? -1 : 1;
  std::vector<DenseMatrixFp> taus;
  for (int i = 1; i < k; ++i)
    taus.push_back(
        DenseMatrixFp::from_sparse(forest::action_matrix(transposition(k, i, i + 1), k, n, t), p).scaled(s));
  const auto cyc = long_cycle(k);
  auto sigma = DenseMatrixFp::from_sparse(forest::action_matrix(cyc, k, n, t), p)
                   .scaled(twist ? permutation_sign(cyc) : 1);
  std::string name = "H_" + std::to_string(t) + "(Conf_" + std::to_string(p) + "(R^" + std::to_string(n) + "))";
  if (twist) name += "(x)sign";
  return GModule(name, p, std::move(sigma), std::move(taus));
}

CyclicData cyclic_data(const GModule& v) {
  CyclicData c;
  c.dim = v.dim();
  const auto id = DenseMatrixFp::identity(v.dim(), v.prime());
  const auto a = v.sigma() - id;
  const auto nm = v.norm();
  c.rank_sigma_minus_one = a.rank();
  c.rank_norm = nm.rank();
  c.composites_vanish = (a * nm).is_zero() && (nm * a).is_zero();
  if (!c.composites_vanish) throw InternalError("(sigma - 1) N does not vanish; sigma has order other than p");
  return c;
}

GradedDims cyclic_cohomology(const GModule& v, int s_max) {
  if (s_max < 0) throw InvalidArgument("s_max must be nonnegative");
  const auto c = cyclic_data(v);
  const auto d = static_cast<std::int64_t>(c.dim);
  const auto r1 = static_cast<std::int64_t>(c.rank_sigma_minus_one);
  const auto rn = static_cast<std::int64_t>(c.rank_norm);
  GradedDims out;
  // cochain complex V --(sigma-1)--> V --N--> V --(sigma-1)--> ...
  out.set(0, d - r1);
  for (int s = 1; s <= s_max; ++s) out.set(s, s % 2 ? (d - rn) - r1 : (d - r1) - rn);
  return out;
}

GradedDims cyclic_homology(const GModule& v, int s_max) {
  if (s_max < 0) throw InvalidArgument("s_max must be nonnegative");
  const auto c = cyclic_data(v);
  const auto d = static_cast<std::int64_t>(c.dim);
  const auto r1 = static_cast<std::int64_t>(c.rank_sigma_minus_one);
  const auto rn = static_cast<std::int64_t>(c.rank_norm);
  GradedDims out;
  // chain complex ... --N--> V --(sigma-1)--> V
  out.set(0, d - r1);
  for (int s = 1; s <= s_max; ++s) out.set(s, s % 2 ? (d - r1) - rn : (d - rn) - r1);
  return out;
}

bool TateDims::periodic(int period) const {
  for (const auto& [s, dim] : dims) {
    auto it = dims.find(s + period);
    if (it != dims.end() && it->second != dim) return false;
  }
  return true;
}

bool TateDims::two_periodic() const { return periodic(2); }

TateDims tate(const GModule& v, int s_min, int s_max) {
  if (s_min > s_max) throw InvalidArgument("empty Tate window");
  const auto c = cyclic_data(v);
  const auto d = static_cast<std::int64_t>(c.dim);
  const auto r1 = static_cast<std::int64_t>(c.rank_sigma_minus_one);
  const auto rn = static_cast<std::int64_t>(c.rank_norm);
  TateDims out;
  out.s_min = s_min;
  out.s_max = s_max;
  for (int s = s_min; s <= s_max; ++s) {
    const bool even = ((s % 2) + 2) % 2 == 0;
    // even: ker(sigma-1)/im N, odd: ker N / im(sigma-1)
    out.dims[s] = even ? (d - r1) - rn : (d - rn) - r1;
  }
  return out;
}

bool VanishingReport::holds() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.vanishes && e.orbit_certificate; });
}

VanishingReport verify_vanishing(std::uint32_t p, int n) {
  require_prime(p);  // p = 2 has no interior degrees, so the check is vacuous
  if (n < 2) throw InvalidArgument("n must be at least 2");
  VanishingReport rep{p, n, {}};
  const int k = static_cast<int>(p);
  const auto cyc = long_cycle(k);
  for (int j = 1; j <= k - 2; ++j) {
    const int t = j * (n - 1);
    auto module = conf_module(p, n, t);
    VanishingEntry e{t, module.dim(), cyclic_homology(module, 2 * k), true, true};
    for (int s = 1; s <= 2 * k; ++s)
      if (e.homology[s] != 0) e.vanishes = false;

    // certificate: the basis splits by underlying partition, sigma carries each partition
    // block into the block of the image partition, and no partition is sigma-fixed
    auto basis = forest::tall_basis(k, n, t);
    std::vector<std::vector<std::vector<int>>> part;
    std::set<std::vector<std::vector<int>>> present;
    for (const auto& f : basis) {
      part.push_back(sorted_partition(f));
      present.insert(part.back());
    }
    for (const auto& q : present) {
      auto x = q;
      int len = 0;
      do {
        x = image_partition(x, cyc);
        ++len;
        if (!present.count(x)) e.orbit_certificate = false;
      } while (x != q && len <= k);
      if (len != k) e.orbit_certificate = false;
    }
    const auto& sig = module.sigma();
    for (std::size_t col = 0; col < basis.size() && e.orbit_certificate; ++col) {
      const auto target = image_partition(part[col], cyc);
      for (std::size_t row = 0; row < basis.size(); ++row)
        if (sig.at(row, col) != 0 && part[row] != target) {
          e.orbit_certificate = false;
          break;
        }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

GradedDims invariants_sigma_p(std::uint32_t p, int n) {
  require_prime(p);
  if (n < 2) throw InvalidArgument("n must be at least 2");
  GradedDims out;
  for (int j = 0; j < static_cast<int>(p); ++j) {
    const int t = j * (n - 1);
    auto v = conf_module(p, n, t);
    const auto id = DenseMatrixFp::identity(v.dim(), p);
    // t_1 and sigma generate Sigma_p, so their (g - 1)-images span the augmentation image
    auto span = (v.taus().front() - id).hstack(v.sigma() - id);
    out.set(t, static_cast<std::int64_t>(v.dim() - span.rank()));
  }
  return out;
}

GradedDims invariants_closed_form(int n) {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  GradedDims out{{0, 1}};
  if (n % 2 == 0) out.set(n - 1, 1);
  return out;
}

PoincareSeries nakaoka_series(std::uint32_t p, int max_degree) {
  require_odd_prime(p);
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  PoincareSeries out(max_degree, 0);
  const int period = 2 * static_cast<int>(p) - 2;
  for (int d = 0; d <= max_degree; d += period) {
    out.add_term(d, 0, 1);
    out.add_term(d + period - 1, 0, 1);
  }
  return out;
}

PoincareSeries cohen_series(std::uint32_t p, int n, int max_degree) {
  require_odd_prime(p);
  if (p == 3) throw HypothesisViolation("the cohomology description of B_p(R^n) needs p > 3");
  if (n < 2) throw InvalidArgument("n must be at least 2");
  const int cut = (n - 1) * (static_cast<int>(p) - 1);
  auto inv = PoincareSeries::from_dims(invariants_sigma_p(p, n), max_degree);
  auto nak = nakaoka_series(p, std::min(cut, max_degree));
  PoincareSeries truncated(max_degree, 0);
  for (const auto& [key, c] : nak.terms()) truncated.add_term(key.second, key.first, c);
  return inv + truncated - PoincareSeries::one(max_degree, 0);
}

std::uint32_t primitive_root(std::uint32_t p) {
  require_prime(p);
  if (p == 2) return 1;
  for (std::uint32_t r = 2; r < p; ++r) {
    std::uint64_t x = 1;
    std::uint32_t order = 0;
    do {
      x = x * r % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return r;
  }
  throw InternalError("no primitive root found");
}

GradedDims sigma_p_cohomology_stable(const GModule& v, int s_max) {
  const std::uint32_t p = v.prime();
  require_odd_prime(p);
  if (!v.has_symmetric_action()) throw UnsupportedDomain("stable elements need the Sigma_p action");
  if (s_max < 0) throw InvalidArgument("s_max must be nonnegative");
  const int k = static_cast<int>(p);
  const std::uint32_t r = primitive_root(p);
  // mu(x) = r x on Z/p (label i <-> x = i-1) satisfies mu sigma mu^-1 = sigma^r; the chain map
  // lifting conjugation uses h = mu^-1 so that h^-1 sigma h = sigma^r
  Permutation mu(k);
  for (int i = 1; i <= k; ++i) mu[i - 1] = static_cast<int>((static_cast<std::uint64_t>(r) * (i - 1)) % p) + 1;
  const auto rho_h = v.rho(inverse(mu));
  const auto id = DenseMatrixFp::identity(v.dim(), p);
  const auto a = v.sigma() - id;
  const auto nm = v.norm();
  const auto tr = sigma_power_sum(v.sigma(), r);
  const DenseMatrixFp zero_map(v.dim(), 0, p);

  GradedDims out;
  std::int64_t rj = 1;  // r^{floor(s/2)} mod p
  for (int s = 0; s <= s_max; ++s) {
    if (s > 0 && s % 2 == 0) rj = rj * r % p;
    const auto& ds = s % 2 == 0 ? a : nm;
    const DenseMatrixFp boundary = s == 0 ? zero_map : ((s - 1) % 2 == 0 ? a : nm);
    auto z = ds.kernel_basis();
    auto m = rho_h.scaled(rj);
    if (s % 2 == 1) m = m * tr;
    auto moved = (m - id) * z;
    auto span = moved.hstack(boundary);
    out.set(s, static_cast<std::int64_t>(z.cols()) - static_cast<std::int64_t>(span.rank()));
  }
  return out;
}

GradedDims bar_cohomology(const GModule& v, int s_max) {
  if (v.prime() != 3) throw UnsupportedDomain("the bar-complex oracle is implemented for Sigma_3 only");
  if (!v.has_symmetric_action()) throw UnsupportedDomain("the bar complex needs the Sigma_3 action");
  if (s_max < 0 || s_max > 4) throw InvalidArgument("bar cohomology supports s in [0, 4]");
  const std::uint32_t p = 3;
  std::vector<Permutation> elems;
  Permutation g = identity_permutation(3);
  do elems.push_back(g);
  while (std::next_permutation(g.begin(), g.end()));
  const std::size_t order = elems.size();
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < order; ++i) index[elems[i]] = i;
  // nonidentity elements are 1..order-1 (elems[0] is the identity)
  std::vector<std::vector<std::size_t>> mult(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) mult[i][j] = index.at(compose(elems[i], elems[j]));
  std::vector<DenseMatrixFp> rho;
  for (const auto& e : elems) rho.push_back(v.rho(e));

  const std::size_t d = v.dim();
  const std::size_t base = order - 1;
  auto count = [&](int s) {
    std::size_t c = 1;
    for (int i = 0; i < s; ++i) c *= base;
    return c;
  };
  auto decode = [&](std::size_t code, int s) {
    std::vector<std::size_t> tuple(s);
    for (int i = s - 1; i >= 0; --i) {
      tuple[i] = code % base + 1;
      code /= base;
    }
    return tuple;
  };
  auto encode = [&](const std::vector<std::size_t>& tuple) {
    std::size_t code = 0;
    for (auto x : tuple) code = code * base + (x - 1);
    return code;
  };

  // d^s : C^s -> C^{s+1} on normalized cochains; row (tuple, a), column (tuple, b)
  auto differential = [&](int s) {
    const std::size_t rows = count(s + 1) * d, cols = count(s) * d;
    DenseMatrixFp m(rows, cols, p);
    auto add = [&](std::size_t r, std::size_t c, std::int64_t x) { m.set(r, c, m.at(r, c) + x); };
    for (std::size_t code = 0; code < count(s + 1); ++code) {
      auto tup = decode(code, s + 1);
      // g_1 f(g_2, ..., g_{s+1})
      {
        std::vector<std::size_t> rest(tup.begin() + 1, tup.end());
        const std::size_t c = encode(rest);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            if (auto x = rho[tup[0]].at(a, b)) add(code * d + a, c * d + b, x);
      }
      for (int i = 0; i < s; ++i) {
        const std::size_t prod = mult[tup[i]][tup[i + 1]];
        if (prod == 0) continue;  // normalized cochains vanish on the identity
        std::vector<std::size_t> merged(tup.begin(), tup.begin() + i);
        merged.push_back(prod);
        merged.insert(merged.end(), tup.begin() + i + 2, tup.end());
        const std::size_t c = encode(merged);
        const std::int64_t sign = (i + 1) % 2 ? -1 : 1;
        for (std::size_t a = 0; a < d; ++a) add(code * d + a, c * d + a, sign);
      }
      {
        std::vector<std::size_t> front(tup.begin(), tup.end() - 1);
        const std::size_t c = encode(front);
        const std::int64_t sign = (s + 1) % 2 ? -1 : 1;
        for (std::size_t a = 0; a < d; ++a) add(code * d + a, c * d + a, sign);
      }
    }
    return m;
  };

  std::vector<std::size_t> ranks;
  for (int s = 0; s <= s_max; ++s) ranks.push_back(differential(s).rank());
  GradedDims out;
  for (int s = 0; s <= s_max; ++s) {
    const auto prev = s == 0 ? 0 : ranks[s - 1];
    out.set(s, static_cast<std::int64_t>(count(s) * d - ranks[s] - prev));
  }
  return out;
}

int swan_period(std::uint32_t p) {
  require_odd_prime(p);
  if (p > 11) throw UnsupportedDomain("swan_period enumerates Sigma_p; p <= 11 only");
  const int k = static_cast<int>(p);
  const auto sigma = long_cycle(k);
  std::set<Permutation> cyclic;
  Permutation x = identity_permutation(k);
  for (int i = 0; i < k; ++i) {
    cyclic.insert(x);
    x = compose(sigma, x);
  }
  long normalizer = 0, centralizer = 0;
  Permutation g = identity_permutation(k);
  do {
    auto conj = compose(compose(g, sigma), inverse(g));
    if (cyclic.count(conj)) ++normalizer;
    if (conj == sigma) ++centralizer;
  } while (std::next_permutation(g.begin(), g.end()));
  return static_cast<int>(2 * normalizer / centralizer);
}

}  // namespace confspace::modp

#include "confspace/ce.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace confspace::ce {

namespace {

int parity_sign(long x) { return (x % 2 == 0) ? 1 : -1; }

void add_sparse(std::vector<ProductTerm>& acc, int basis, std::int64_t c) {
  if (c == 0) return;
  auto it = std::lower_bound(acc.begin(), acc.end(), basis, [](const ProductTerm& t, int b) { return t.basis < b; });
  if (it != acc.end() && it->basis == basis) {
    it->coeff += c;
    if (it->coeff == 0) acc.erase(it);
  } else {
    acc.insert(it, ProductTerm{basis, c});
  }
}

std::string describe(const std::vector<ProductTerm>& v, const std::vector<AlgebraBasis>& basis) {
  if (v.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " + " : "") << v[i].coeff << "*" << basis[v[i].basis].name;
  return os.str();
}

const std::vector<ProductTerm> kZeroProduct;
const std::vector<std::pair<int, Integer>> kZeroBracket;

}  // namespace

CAlgebra CAlgebra::from_json(const nlohmann::json& doc) {
  CAlgebra a;
  try {
    a.name_ = doc.value("name", std::string("unnamed"));
    if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer())
      throw ValidationError("algebra document needs an integer ambient_dim");
    a.n_ = doc["ambient_dim"].get<int>();
    if (a.n_ < 1) throw ValidationError("ambient_dim must be positive");
    if (!doc.contains("basis") || !doc["basis"].is_array()) throw ValidationError("algebra document needs a basis array");
    for (const auto& b : doc["basis"]) {
      AlgebraBasis e{b.at("name").get<std::string>(), b.at("degree").get<int>()};
      if (e.name.empty()) throw ValidationError("basis element with an empty name");
      if (e.degree < 0 || e.degree > a.n_)
        throw ValidationError("basis element " + e.name + " has degree " + std::to_string(e.degree) + " outside [0, " +
                              std::to_string(a.n_) + "]");
      for (const auto& prev : a.basis_)
        if (prev.name == e.name) throw ValidationError("duplicate basis element " + e.name);
      a.basis_.push_back(e);
    }
    for (const auto& p : doc.value("products", nlohmann::json::array())) {
      int l = a.index_of(p.at("left").get<std::string>());
      int r = a.index_of(p.at("right").get<std::string>());
      if (a.products_.count({l, r})) throw ValidationError("product " + a.basis_[l].name + "*" + a.basis_[r].name + " given twice");
      std::vector<ProductTerm> v;
      for (const auto& t : p.at("result")) add_sparse(v, a.index_of(t.at("basis").get<std::string>()), t.at("coeff").get<std::int64_t>());
      const int deg = a.basis_[l].degree + a.basis_[r].degree;
      for (const auto& t : v)
        if (a.basis_[t.basis].degree != deg)
          throw ValidationError("degree overflow: " + a.basis_[l].name + "*" + a.basis_[r].name + " has degree " +
                                std::to_string(deg) + " but lands on " + a.basis_[t.basis].name);
      if (!v.empty()) a.products_[{l, r}] = std::move(v);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed algebra document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
  a.validate();
  return a;
}

nlohmann::json CAlgebra::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["ambient_dim"] = n_;
  j["basis"] = nlohmann::json::array();
  for (const auto& b : basis_) j["basis"].push_back({{"name", b.name}, {"degree", b.degree}});
  j["products"] = nlohmann::json::array();
  for (const auto& [key, v] : products_) {
    nlohmann::json res = nlohmann::json::array();
    for (const auto& t : v) res.push_back({{"basis", basis_[t.basis].name}, {"coeff", t.coeff}});
    j["products"].push_back({{"left", basis_[key.first].name}, {"right", basis_[key.second].name}, {"result", res}});
  }
  return j;
}

int CAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return static_cast<int>(i);
  throw InvalidArgument("unknown basis element '" + name + "'");
}

const std::vector<ProductTerm>& CAlgebra::product(int i, int j) const {
  auto it = products_.find({i, j});
  return it == products_.end() ? kZeroProduct : it->second;
}

std::vector<ProductTerm> CAlgebra::multiply(const std::vector<ProductTerm>& x, int j) const {
  std::vector<ProductTerm> out;
  for (const auto& t : x)
    for (const auto& u : product(t.basis, j)) add_sparse(out, u.basis, t.coeff * u.coeff);
  return out;
}

std::vector<ProductTerm> CAlgebra::multiply(int i, const std::vector<ProductTerm>& y) const {
  std::vector<ProductTerm> out;
  for (const auto& t : y)
    for (const auto& u : product(i, t.basis)) add_sparse(out, u.basis, t.coeff * u.coeff);
  return out;
}

void CAlgebra::validate() const {
  const int m = static_cast<int>(basis_.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<ProductTerm> twisted = product(j, i);
      const int s = parity_sign(static_cast<long>(basis_[i].degree) * basis_[j].degree);
      for (auto& t : twisted) t.coeff *= s;
      if (product(i, j) != twisted)
        throw ValidationError("graded commutativity fails on (" + basis_[i].name + ", " + basis_[j].name + "): " +
                              describe(product(i, j), basis_) + " vs " + describe(twisted, basis_));
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        auto left = multiply(product(i, j), k);
        auto right = multiply(i, product(j, k));
        if (left != right)
          throw ValidationError("associativity fails on (" + basis_[i].name + ", " + basis_[j].name + ", " +
                                basis_[k].name + "): " + describe(left, basis_) + " vs " + describe(right, basis_));
      }
}

GradedDims CAlgebra::manifold_homology() const {
  GradedDims h;
  for (const auto& b : basis_) h.add(n_ - b.degree, 1);
  return h;
}

CAlgebra load_algebra(const nlohmann::json& doc) { return CAlgebra::from_json(doc); }

CAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open algebra file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  return CAlgebra::from_json(doc);
}

GMLie GMLie::build(const CAlgebra& a, bool negate_weight_two) {
  GMLie g;
  g.name_ = a.name();
  g.n_ = a.ambient_dim();
  const int n = g.n_;
  const auto& basis = a.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    g.slots_.push_back(Slot{basis[i].name, static_cast<int>(i), 1, n - 1 - basis[i].degree});
    if (n % 2 == 0) g.slots_.push_back(Slot{basis[i].name + "~", static_cast<int>(i), 2, 2 * n - 2 - basis[i].degree});
  }
  std::sort(g.slots_.begin(), g.slots_.end(), [](const Slot& x, const Slot& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    if (x.degree != y.degree) return x.degree < y.degree;
    return x.name < y.name;
  });
  std::map<int, int> square_slot;  // algebra index -> its [v,v] slot
  int top_count = 0;
  for (std::size_t s = 0; s < g.slots_.size(); ++s) {
    const auto& sl = g.slots_[s];
    if (sl.weight == 2) square_slot[sl.algebra_index] = static_cast<int>(s);
    if (sl.weight == 1 && basis[sl.algebra_index].degree == n) {
      g.point_slot_ = static_cast<int>(s);
      ++top_count;
    }
  }
  if (top_count != 1) g.point_slot_ = -1;
  if (n % 2 == 0) {
    // [a(x)v, b(x)v] = (-1)^{|v||b|} (ab)(x)[v,v], |v| odd
    for (std::size_t x = 0; x < g.slots_.size(); ++x)
      for (std::size_t y = 0; y < g.slots_.size(); ++y) {
        const auto& sx = g.slots_[x];
        const auto& sy = g.slots_[y];
        if (sx.weight != 1 || sy.weight != 1) continue;
        std::vector<std::pair<int, Integer>> v;
        const int s = parity_sign(basis[sy.algebra_index].degree) * (negate_weight_two ? -1 : 1);
        for (const auto& t : a.product(sx.algebra_index, sy.algebra_index))
          v.emplace_back(square_slot.at(t.basis), Integer(static_cast<long>(t.coeff * s)));
        std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        if (!v.empty()) g.brackets_[{static_cast<int>(x), static_cast<int>(y)}] = std::move(v);
      }
  }
  g.check_identities();
  return g;
}

int GMLie::slot_of(const std::string& name) const {
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].name == name) return static_cast<int>(i);
  throw InvalidArgument("unknown slot '" + name + "'");
}

const std::vector<std::pair<int, Integer>>& GMLie::bracket(int i, int j) const {
  auto it = brackets_.find({i, j});
  return it == brackets_.end() ? kZeroBracket : it->second;
}

BigradedDims GMLie::shifted_dims() const {
  BigradedDims d;
  for (const auto& s : slots_) d.add(s.shifted(), s.weight, 1);
  return d;
}

std::vector<std::pair<int, Integer>> GMLie::bracket_vec(const std::vector<std::pair<int, Integer>>& x,
                                                        const std::vector<std::pair<int, Integer>>& y) const {
  std::map<int, Integer> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y)
      for (const auto& [k, c] : bracket(i, j)) acc[k] += a * b * c;
  std::vector<std::pair<int, Integer>> out;
  for (auto& [k, c] : acc)
    if (sgn(c) != 0) out.emplace_back(k, c);
  return out;
}

void GMLie::check_identities() const {
  const int m = static_cast<int>(slots_.size());
  for (const auto& [key, v] : brackets_)
    for (const auto& [z, c] : v) {
      const auto& sx = slots_[key.first];
      const auto& sy = slots_[key.second];
      if (slots_[z].degree != sx.degree + sy.degree || slots_[z].weight != sx.weight + sy.weight)
        throw ValidationError("bracket [" + sx.name + ", " + sy.name + "] is not bigraded");
    }
  // [x, y] = -(-1)^{|x||y|} [y, x]
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto yx = bracket(j, i);
      const int s = -parity_sign(static_cast<long>(slots_[i].degree) * slots_[j].degree);
      for (auto& t : yx) t.second *= s;
      if (bracket(i, j) != yx)
        throw ValidationError("antisymmetry fails on (" + slots_[i].name + ", " + slots_[j].name + ")");
    }
  // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
  auto unit = [](int i) { return std::vector<std::pair<int, Integer>>{{i, Integer(1)}}; };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        const long dx = slots_[x].degree, dy = slots_[y].degree, dz = slots_[z].degree;
        std::map<int, Integer> acc;
        auto add = [&](const std::vector<std::pair<int, Integer>>& v, int s) {
          for (const auto& [k, c] : v) acc[k] += s * c;
        };
        add(bracket_vec(unit(x), bracket(y, z)), parity_sign(dx * dz));
        add(bracket_vec(unit(y), bracket(z, x)), parity_sign(dy * dx));
        add(bracket_vec(unit(z), bracket(x, y)), parity_sign(dz * dy));
        for (const auto& [k, c] : acc)
          if (sgn(c) != 0)
            throw ValidationError("Jacobi identity fails on (" + slots_[x].name + ", " + slots_[y].name + ", " +
                                  slots_[z].name + ")");
      }
}

std::size_t CEComplexBlock::dim(int degree) const {
  auto it = basis.find(degree);
  return it == basis.end() ? 0 : it->second.size();
}

std::size_t CEComplexBlock::index_of(int degree, const Exponents& e) const {
  auto& idx = index_[degree];
  if (idx.empty() && dim(degree) > 0) {
    const auto& b = basis.at(degree);
    for (std::size_t i = 0; i < b.size(); ++i) idx[b[i]] = i;
  }
  auto it = idx.find(e);
  if (it == idx.end()) throw InternalError("monomial missing from the CE basis");
  return it->second;
}

const linalg::SparseMatrix<Integer>& CEComplexBlock::d(int degree) const {
  auto it = differential.find(degree);
  if (it != differential.end()) return it->second;
  auto z = zero_cache_.find(degree);
  if (z == zero_cache_.end()) z = zero_cache_.emplace(degree, linalg::SparseMatrix<Integer>(dim(degree - 1), dim(degree))).first;
  return z->second;
}

std::string CEComplexBlock::monomial_name(const GMLie& g, const Exponents& e) const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += g.slots()[i].name;
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

CEComplexBlock ce_block(const GMLie& g, int k) {
  if (k < 0) throw InvalidArgument("weight must be nonnegative");
  const auto& slots = g.slots();
  const int m = static_cast<int>(slots.size());
  CEComplexBlock block;
  block.weight = k;

  Exponents e(m, 0);
  auto rec = [&](auto&& self, int i, int remaining, int degree) -> void {
    if (i == m) {
      if (remaining == 0) block.basis[degree].push_back(e);
      return;
    }
    const int w = slots[i].weight;
    const int top = slots[i].exterior() ? std::min(1, remaining / w) : remaining / w;
    for (int x = top; x >= 0; --x) {
      e[i] = x;
      self(self, i + 1, remaining - x * w, degree + x * slots[i].shifted());
    }
    e[i] = 0;
  };
  rec(rec, 0, k, 0);

  for (const auto& [deg, mons] : block.basis) {
    std::vector<linalg::Triplet<Integer>> entries;
    const bool has_target = block.dim(deg - 1) > 0;
    for (std::size_t col = 0; has_target && col < mons.size(); ++col) {
      const Exponents& mono = mons[col];
      std::vector<int> gens;  // the monomial written out in slot order
      for (int s = 0; s < m; ++s)
        for (int c = 0; c < mono[s]; ++c) gens.push_back(s);
      std::vector<long> prefix(gens.size() + 1, 0);
      for (std::size_t t = 0; t < gens.size(); ++t) prefix[t + 1] = prefix[t] + slots[gens[t]].shifted();
      for (std::size_t p = 0; p < gens.size(); ++p)
        for (std::size_t q = p + 1; q < gens.size(); ++q) {
          const int x = gens[p], y = gens[q];
          const auto& br = g.bracket(x, y);
          if (br.empty()) continue;
          const long sx = slots[x].shifted(), sy = slots[y].shifted();
          // bring the pair to the front, then q(sx sy) = (-1)^{|x|} s[x, y]
          int sign = parity_sign(sx * prefix[p] + sy * (prefix[q] - sx)) * parity_sign(sx - 1);
          Exponents rest = mono;
          --rest[x];
          --rest[y];
          for (const auto& [z, c] : br) {
            if (slots[z].exterior() && rest[z] > 0) continue;
            long before = 0;
            for (int t = 0; t < z; ++t) before += static_cast<long>(rest[t]) * slots[t].shifted();
            int s2 = parity_sign(slots[z].shifted() * before);
            Exponents out = rest;
            ++out[z];
            entries.push_back({block.index_of(deg - 1, out), col, c * (sign * s2)});
          }
        }
    }
    block.differential.emplace(deg, linalg::SparseMatrix<Integer>::from_triplets(block.dim(deg - 1), mons.size(), std::move(entries)));
  }

  for (const auto& [deg, dm] : block.differential) {
    if (!block.differential.count(deg - 1)) continue;
    if (!linalg::multiply(block.d(deg - 1), dm).is_zero_matrix())
      throw InternalError("CE differential squares to a nonzero map in weight " + std::to_string(k) + ", degree " +
                          std::to_string(deg));
  }
  return block;
}

namespace {
std::size_t rank_q(const linalg::SparseMatrix<Integer>& m) {
  if (m.is_zero_matrix()) return 0;
  return linalg::rank(linalg::to_rational(m));
}
}  // namespace

GradedDims homology_dims(const CEComplexBlock& block) {
  std::map<int, std::size_t> ranks;
  for (const auto& [deg, dm] : block.differential) ranks[deg] = rank_q(dm);
  GradedDims h;
  for (const auto& [deg, mons] : block.basis) {
    std::int64_t v = static_cast<std::int64_t>(mons.size()) - static_cast<std::int64_t>(ranks[deg]) -
                     static_cast<std::int64_t>(ranks.count(deg + 1) ? ranks[deg + 1] : 0);
    if (v < 0) throw InternalError("negative homology dimension");
    h.set(deg, v);
  }
  return h;
}

GradedDims betti(const GMLie& g, int k) { return homology_dims(ce_block(g, k)); }

std::string BettiTable::to_csv() const {
  std::ostringstream os;
  os << "k,i,dim\n";
  for (const auto& [k, dims] : by_weight)
    for (const auto& [i, d] : dims.entries()) os << k << ',' << i << ',' << d << '\n';
  return os.str();
}

nlohmann::json BettiTable::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [k, dims] : by_weight) j.push_back({{"k", k}, {"betti", dims.to_json()}});
  return j;
}

BettiTable betti_table(const GMLie& g, int kmax, int workers) {
  if (kmax < 0) throw InvalidArgument("kmax must be nonnegative");
  std::vector<GradedDims> results(kmax + 1);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (int k; (k = next.fetch_add(1)) <= kmax;) {
      try {
        results[k] = betti(g, k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(workers, kmax + 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  BettiTable table;
  for (int k = 0; k <= kmax; ++k) table.by_weight[k] = results[k];
  return table;
}

namespace {

StabilizationMap derivative_map(int slot, const CEComplexBlock& source, const CEComplexBlock& target) {
  StabilizationMap sm;
  sm.source_weight = source.weight;
  sm.slot = slot;
  std::vector<int> degrees;
  for (const auto& [d, b] : source.basis) degrees.push_back(d);
  for (const auto& [d, b] : target.basis) degrees.push_back(d);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  std::size_t x_free = 0, kernel = 0;
  sm.surjective = true;
  for (int d : degrees) {
    std::vector<linalg::Triplet<Integer>> entries;
    if (source.dim(d) > 0) {
      const auto& mons = source.basis.at(d);
      for (std::size_t col = 0; col < mons.size(); ++col) {
        if (mons[col][slot] == 0) {
          ++x_free;
          continue;
        }
        Exponents e = mons[col];
        --e[slot];
        entries.push_back({target.index_of(d, e), col, Integer(mons[col][slot])});
      }
    }
    auto m = linalg::SparseMatrix<Integer>::from_triplets(target.dim(d), source.dim(d), std::move(entries));
    std::size_t r = rank_q(m);
    if (r != target.dim(d)) sm.surjective = false;
    kernel += source.dim(d) - r;
    sm.maps.emplace(d, std::move(m));
  }
  sm.kernel_is_x_free = (kernel == x_free);

  sm.chain_map = true;
  for (int d : degrees) {
    const auto& here = sm.maps.at(d);
    auto below = sm.maps.find(d - 1);
    auto lhs = linalg::multiply(target.d(d), here);
    linalg::SparseMatrix<Integer> rhs(target.dim(d - 1), source.dim(d));
    if (below != sm.maps.end()) rhs = linalg::multiply(below->second, source.d(d));
    if (!(linalg::subtract(lhs, rhs).is_zero_matrix())) sm.chain_map = false;
  }
  return sm;
}

void check_point_slot(const GMLie& g, int slot) {
  if (slot < 0 || slot >= static_cast<int>(g.slots().size())) throw InvalidArgument("stabilization slot is not a basis slot");
  if (slot != g.point_slot())
    throw InvalidArgument("slot " + g.slots()[slot].name + " is not the weight-1 slot of the point class");
}

}  // namespace

StabilizationMap stabilization_map(const GMLie& g, int slot, int k) {
  if (k < 0) throw InvalidArgument("weight must be nonnegative");
  check_point_slot(g, slot);
  return derivative_map(slot, ce_block(g, k + 1), ce_block(g, k));
}

bool StabilityReport::stable_range_holds() const {
  for (const auto& e : entries)
    if (e.i <= e.k && !e.iso) return false;
  return true;
}

StabilityReport stability_report(const GMLie& g, int kmax) {
  if (g.ambient_dim() <= 2)
    throw HypothesisViolation("homological stability via d/dx is only guaranteed in the range i <= k for n > 2; got n = " +
                              std::to_string(g.ambient_dim()));
  if (g.point_slot() < 0) throw HypothesisViolation("the algebra has no unique top-degree (point) class");
  const int x = g.point_slot();
  std::vector<CEComplexBlock> blocks;
  for (int k = 0; k <= kmax; ++k) blocks.push_back(ce_block(g, k));

  StabilityReport report;
  for (int k = 0; k < kmax; ++k) {
    const auto& src = blocks[k + 1];
    const auto& tgt = blocks[k];
    StabilizationMap sm = derivative_map(x, src, tgt);
    if (!sm.chain_map || !sm.surjective || !sm.kernel_is_x_free) report.chain_maps_ok = false;
    for (const auto& [i, dmap] : sm.maps) {
      const std::size_t ns = src.dim(i), nt = tgt.dim(i);
      // cycles of the source and boundaries of the target
      std::vector<std::vector<linalg::Rational>> cycles;
      if (ns > 0) cycles = linalg::kernel_basis(linalg::to_rational(src.d(i)));
      const auto& bnd = tgt.d(i + 1);
      std::size_t rank_b = rank_q(bnd);
      std::size_t rank_src_b = rank_q(src.d(i + 1));
      std::int64_t hs = static_cast<std::int64_t>(cycles.size()) - static_cast<std::int64_t>(rank_src_b);
      std::int64_t ht = static_cast<std::int64_t>(nt) - static_cast<std::int64_t>(rank_q(tgt.d(i))) -
                        static_cast<std::int64_t>(rank_b);
      // rank of the induced map = rank [D Z | B] - rank B, assembled as rows
      std::vector<linalg::Triplet<linalg::Rational>> rows;
      std::size_t r = 0;
      auto dq = linalg::to_rational(dmap);
      for (const auto& z : cycles) {
        auto image = dq.apply(z);
        for (std::size_t c = 0; c < image.size(); ++c)
          if (sgn(image[c]) != 0) rows.push_back({r, c, image[c]});
        ++r;
      }
      auto bt = linalg::to_rational(bnd).transposed();
      for (std::size_t b = 0; b < bt.rows(); ++b, ++r)
        for (const auto& [c, v] : bt.row(b)) rows.push_back({r, c, v});
      auto stacked = linalg::SparseMatrix<linalg::Rational>::from_triplets(r, nt, std::move(rows));
      std::int64_t induced = static_cast<std::int64_t>(nt == 0 ? 0 : linalg::rank(stacked)) - static_cast<std::int64_t>(rank_b);
      report.entries.push_back(StabilityEntry{k, i, hs, ht, induced, induced == hs && induced == ht});
    }
  }
  return report;
}

EulerComparison euler_series(const GMLie& g, int kmax) {
  if (kmax < 0) throw InvalidArgument("kmax must be nonnegative");
  EulerComparison out{PoincareSeries(std::nullopt, kmax), PoincareSeries(std::nullopt, kmax), false};
  for (int k = 0; k <= kmax; ++k) {
    CEComplexBlock block = ce_block(g, k);
    BigInt chi = 0;
    for (const auto& [deg, mons] : block.basis) chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long>(mons.size());
    out.by_chains.add_term(0, k, chi);
  }
  out.by_sym = sym_series(g.shifted_dims(), std::nullopt, kmax).at_t_minus_one();
  out.agree = series_equal(out.by_chains, out.by_sym);
  return out;
}

GradedDims sym_homology_odd(const GradedDims& h, int k) {
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  BigradedDims v;
  for (const auto& [d, m] : h.entries()) v.set(d, 1, m);
  PoincareSeries s = sym_series(v, std::nullopt, k);
  GradedDims out;
  for (const auto& [d, c] : s.weight_piece(k)) out.set(d, c.get_si());
  return out;
}

GradedDims loopspace_homology(int loops, int sphere, int max_degree) {
  if (sphere % 2 == 0) throw UnsupportedDomain("loop-space homology as Sym on one class is implemented for odd spheres only");
  if (loops < 0 || loops >= sphere) throw InvalidArgument("need 0 <= loops < sphere dimension");
  const int a = sphere - loops;
  GradedDims out{{0, 1}};
  if (a % 2 != 0) {
    if (a <= max_degree) out.set(a, 1);
  } else {
    for (int d = a; d <= max_degree; d += a) out.set(d, 1);
  }
  return out;
}

LabeledCheck labeled_series_check(const CAlgebra& m, int r, int max_degree) {
  const int n = m.ambient_dim();
  if (n % 2 == 0) throw HypothesisViolation("the labeled-configuration identity is checked for odd n only");
  if (r < 2 || r % 2 != 0) throw HypothesisViolation("r must be even and at least 2 (so that r + n is odd)");
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  const int wmax = max_degree / r;  // weight k starts in degree r k
  GMLie g = GMLie::build(m);
  LabeledCheck out{PoincareSeries(max_degree, wmax), PoincareSeries::one(max_degree, wmax), false};
  for (int k = 0; k <= wmax; ++k) {
    const GradedDims h = betti(g, k);
    for (const auto& [d, dim] : h.entries()) out.lhs.add_term(d + r * k, k, dim);
  }
  const GradedDims hm = m.manifold_homology();
  for (const auto& [i, beta] : hm.entries()) {
    // the loop-space generator sits in degree r + i and counts one point
    PoincareSeries factor(max_degree, wmax);
    const GradedDims loops = loopspace_homology(n - i, n + r, max_degree);
    for (const auto& [d, dim] : loops.entries())
      factor.add_term(d, d / (r + i), dim);
    for (std::int64_t c = 0; c < beta; ++c) out.rhs = out.rhs * factor;
  }
  out.equal = series_equal(out.lhs, out.rhs);
  return out;
}

}  // namespace confspace::ce

#include "confspace/graded.hpp"

#include <algorithm>
#include <sstream>

#include "confspace/error.hpp"

namespace confspace {

nlohmann::json bigint_json(const BigInt& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

GradedDims::GradedDims(std::initializer_list<std::pair<const int, std::int64_t>> init) {
  for (const auto& [d, v] : init) set(d, v);
}

std::int64_t GradedDims::operator[](int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

void GradedDims::set(int degree, std::int64_t dim) {
  if (dim < 0) throw InvalidArgument("negative dimension");
  if (dim == 0)
    dims_.erase(degree);
  else
    dims_[degree] = dim;
}

std::int64_t GradedDims::total() const {
  std::int64_t t = 0;
  for (const auto& [d, v] : dims_) t += v;
  return t;
}

std::int64_t GradedDims::euler_characteristic() const {
  std::int64_t t = 0;
  for (const auto& [d, v] : dims_) t += (d % 2 == 0) ? v : -v;
  return t;
}

std::string GradedDims::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [d, v] : dims_) {
    os << (first ? "" : ", ") << d << ':' << v;
    first = false;
  }
  os << '}';
  return os.str();
}

nlohmann::json GradedDims::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [d, v] : dims_) j[std::to_string(d)] = v;
  return j;
}

std::int64_t BigradedDims::get(int degree, int weight) const {
  auto it = dims_.find({degree, weight});
  return it == dims_.end() ? 0 : it->second;
}

void BigradedDims::set(int degree, int weight, std::int64_t dim) {
  if (weight < 0) throw InvalidArgument("negative weight");
  if (dim < 0) throw InvalidArgument("negative dimension");
  if (dim == 0)
    dims_.erase({degree, weight});
  else
    dims_[{degree, weight}] = dim;
}

BigradedDims BigradedDims::direct_sum(const BigradedDims& o) const {
  BigradedDims r = *this;
  for (const auto& [k, v] : o.dims_) r.add(k.first, k.second, v);
  return r;
}

GradedDims tensor(const GradedDims& a, const GradedDims& b) {
  GradedDims r;
  for (const auto& [d1, v1] : a.entries())
    for (const auto& [d2, v2] : b.entries()) r.add(d1 + d2, v1 * v2);
  return r;
}

BigradedDims tensor(const BigradedDims& a, const BigradedDims& b) {
  BigradedDims r;
  for (const auto& [k1, v1] : a.entries())
    for (const auto& [k2, v2] : b.entries()) r.add(k1.first + k2.first, k1.second + k2.second, v1 * v2);
  return r;
}

PoincareSeries::PoincareSeries(std::optional<int> max_degree, int max_weight)
    : max_degree_(max_degree), max_weight_(max_weight) {
  if (max_weight < 0) throw InvalidArgument("weight bound must be nonnegative");
}

PoincareSeries PoincareSeries::one(std::optional<int> max_degree, int max_weight) {
  PoincareSeries s(max_degree, max_weight);
  s.add_term(0, 0, 1);
  return s;
}

PoincareSeries PoincareSeries::univariate(const std::vector<BigInt>& coeffs, std::optional<int> max_degree) {
  PoincareSeries s(max_degree, 0);
  for (std::size_t d = 0; d < coeffs.size(); ++d) s.add_term(static_cast<int>(d), 0, coeffs[d]);
  return s;
}

PoincareSeries PoincareSeries::from_dims(const GradedDims& dims, std::optional<int> max_degree) {
  PoincareSeries s(max_degree, 0);
  for (const auto& [d, v] : dims.entries()) s.add_term(d, 0, v);
  return s;
}

bool PoincareSeries::in_window(int degree, int weight) const {
  return weight >= 0 && weight <= max_weight_ && (!max_degree_ || degree <= *max_degree_);
}

BigInt PoincareSeries::coeff(int degree, int weight) const {
  if (!in_window(degree, weight)) throw InvalidArgument("coefficient requested outside the truncation window");
  auto it = terms_.find({weight, degree});
  return it == terms_.end() ? BigInt(0) : it->second;
}

void PoincareSeries::add_term(int degree, int weight, const BigInt& c) {
  if (!in_window(degree, weight) || sgn(c) == 0) return;
  auto& slot = terms_[{weight, degree}];
  slot += c;
  if (sgn(slot) == 0) terms_.erase({weight, degree});
}

std::optional<int> PoincareSeries::min_degree() const {
  std::optional<int> m;
  for (const auto& [k, c] : terms_)
    if (!m || k.second < *m) m = k.second;
  return m;
}

namespace {
std::optional<int> min_opt(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}
}  // namespace

PoincareSeries PoincareSeries::operator+(const PoincareSeries& o) const {
  PoincareSeries r(min_opt(max_degree_, o.max_degree_), std::min(max_weight_, o.max_weight_));
  for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
  for (const auto& [k, c] : o.terms_) r.add_term(k.second, k.first, c);
  return r;
}

PoincareSeries PoincareSeries::operator-(const PoincareSeries& o) const {
  PoincareSeries r(min_opt(max_degree_, o.max_degree_), std::min(max_weight_, o.max_weight_));
  for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
  for (const auto& [k, c] : o.terms_) r.add_term(k.second, k.first, -c);
  return r;
}

PoincareSeries PoincareSeries::operator*(const PoincareSeries& o) const {
  // Unknown terms of one factor (degree beyond its bound) can fall back into the window
  // when the other factor has negative degrees, so the degree bound shrinks accordingly.
  std::optional<int> bound;
  int lo_a = std::min(0, min_degree().value_or(0));
  int lo_b = std::min(0, o.min_degree().value_or(0));
  if (max_degree_) bound = *max_degree_ + lo_b;
  if (o.max_degree_) bound = min_opt(bound, *o.max_degree_ + lo_a);
  PoincareSeries r(bound, std::min(max_weight_, o.max_weight_));
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term(k1.second + k2.second, k1.first + k2.first, c1 * c2);
  return r;
}

PoincareSeries PoincareSeries::truncated(std::optional<int> max_degree, int max_weight) const {
  PoincareSeries r(min_opt(max_degree_, max_degree), std::min(max_weight_, max_weight));
  for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
  return r;
}

std::map<int, BigInt> PoincareSeries::weight_piece(int weight) const {
  if (weight < 0 || weight > max_weight_) throw InvalidArgument("weight outside the truncation window");
  std::map<int, BigInt> out;
  for (const auto& [k, c] : terms_)
    if (k.first == weight) out[k.second] = c;
  return out;
}

PoincareSeries PoincareSeries::at_t_minus_one() const {
  if (max_degree_) throw InvalidArgument("t -> -1 needs a series without degree truncation");
  PoincareSeries r(std::nullopt, max_weight_);
  for (const auto& [k, c] : terms_) r.add_term(0, k.first, (k.second % 2 == 0) ? c : BigInt(-c));
  return r;
}

std::string PoincareSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    auto [w, d] = k;
    BigInt mag = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool bare = (w == 0 && d == 0);
    if (mag != 1 || bare) os << mag.get_str();
    if (w == 1) os << 's';
    if (w > 1) os << "s^" << w;
    if (d == 1) os << 't';
    if (d != 0 && d != 1) os << "t^" << d;
  }
  return os.str();
}

nlohmann::json PoincareSeries::to_json() const {
  nlohmann::json j;
  int lo = std::min(0, min_degree().value_or(0));
  int hi = 0;
  for (const auto& [k, c] : terms_) hi = std::max(hi, k.second);
  if (max_degree_) hi = *max_degree_;
  j["min_degree"] = lo;
  j["max_degree"] = max_degree_ ? nlohmann::json(*max_degree_) : nlohmann::json(nullptr);
  j["max_weight"] = max_weight_;
  auto row = [&](int w) {
    nlohmann::json arr = nlohmann::json::array();
    for (int d = lo; d <= hi; ++d) {
      auto it = terms_.find({w, d});
      arr.push_back(it == terms_.end() ? nlohmann::json(0) : bigint_json(it->second));
    }
    return arr;
  };
  if (max_weight_ == 0) {
    j["coefficients"] = row(0);
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (int w = 0; w <= max_weight_; ++w) rows.push_back(row(w));
    j["coefficients"] = rows;
  }
  return j;
}

PoincareSeries sym_series(const BigradedDims& v, std::optional<int> degree_bound, int weight_bound) {
  bool negative = false;
  for (const auto& [k, m] : v.entries()) {
    auto [d, w] = k;
    if (d < 0) negative = true;
    if (w == 0 && d % 2 == 0 && (d <= 0 || !degree_bound))
      throw InvalidArgument("sym_series: an even weight-0 generator needs a positive degree and a degree bound");
  }
  if (negative)
    for (const auto& [k, m] : v.entries())
      if (k.second == 0) throw InvalidArgument("sym_series: negative degrees need every generator to carry weight");
  // With negative degrees every weight piece is finite, so expand exactly and cut at the end.
  std::optional<int> work_bound = negative ? std::nullopt : degree_bound;
  PoincareSeries acc = PoincareSeries::one(work_bound, weight_bound);
  for (const auto& [k, mult] : v.entries()) {
    auto [d, w] = k;
    PoincareSeries factor(work_bound, weight_bound);
    if (d % 2 != 0) {
      factor.add_term(0, 0, 1);
      factor.add_term(d, w, 1);
    } else {
      for (int j = 0;; ++j) {
        if (w > 0 && j * w > weight_bound) break;
        if (w == 0 && j * d > *degree_bound) break;
        if (w > 0 && work_bound && d > 0 && j * d > *work_bound) break;
        factor.add_term(j * d, j * w, 1);
        if (w == 0 && d == 0) break;
      }
    }
    for (std::int64_t i = 0; i < mult; ++i) acc = acc * factor;
  }
  return acc.truncated(degree_bound, weight_bound);
}

bool series_equal(const PoincareSeries& a, const PoincareSeries& b) {
  std::optional<int> d = a.max_degree();
  if (b.max_degree()) d = d ? std::min(*d, *b.max_degree()) : b.max_degree();
  int w = std::min(a.max_weight(), b.max_weight());
  auto lo = [](const PoincareSeries& s) { return s.min_degree().value_or(0); };
  if (d && *d < std::min(lo(a), lo(b)) && (!a.terms().empty() || !b.terms().empty()))
    throw InvalidArgument("series_equal: truncation windows do not overlap");
  PoincareSeries ta = a.truncated(d, w), tb = b.truncated(d, w);
  return ta.terms() == tb.terms();
}

}  // namespace confspace

#include "confspace/arnold.hpp"

#include <random>
#include <sstream>

namespace confspace::arnold {

bool MonomialOrder::operator()(const Monomial& x, const Monomial& y) const {
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].b != y[i].b) return x[i].b < y[i].b;
    if (x[i].a != y[i].a) return x[i].a < y[i].a;
  }
  return x.size() < y.size();
}

bool is_admissible(const Monomial& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].a >= m[i].b) return false;
    if (i > 0 && m[i - 1].b >= m[i].b) return false;
  }
  return true;
}

CohomologyClass CohomologyClass::one(Context ctx) {
  CohomologyClass c(ctx);
  c.terms_[{}] = 1;
  return c;
}

CohomologyClass CohomologyClass::generator(Context ctx, int a, int b) {
  return normal_form(Monomial{{a, b}}, ctx.k, ctx.n);
}

Integer CohomologyClass::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void CohomologyClass::add_term(const Monomial& m, const Integer& c) {
  if (!is_admissible(m)) throw InvalidArgument("add_term: monomial " + monomial_to_string(m) + " is not admissible");
  for (const auto& g : m)
    if (g.a < 1 || g.b > ctx_.k) throw InvalidArgument("add_term: index out of range");
  if (sgn(c) == 0) return;
  auto& slot = terms_[m];
  slot += c;
  if (sgn(slot) == 0) terms_.erase(m);
}

CohomologyClass& CohomologyClass::operator+=(const CohomologyClass& o) {
  if (!(ctx_ == o.ctx_)) throw InvalidArgument("cohomology classes from different contexts");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& o) const {
  CohomologyClass r = *this;
  return r += o;
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& o) const { return *this + o.scaled(-1); }

CohomologyClass CohomologyClass::scaled(const Integer& c) const {
  CohomologyClass r(ctx_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, x] : terms_) r.terms_[m] = x * c;
  return r;
}

std::string CohomologyClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer mag = abs(c);
    os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
    first = false;
    if (mag != 1) os << mag.get_str() << (m.empty() ? "" : "*");
    if (mag != 1 && m.empty()) continue;
    os << monomial_to_string(m);
  }
  return os.str();
}

nlohmann::json CohomologyClass::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [m, c] : terms_) j[monomial_to_string(m)] = bigint_json(c);
  return j;
}

std::map<Monomial, linalg::Fp, MonomialOrder> CohomologyClass::reduce_mod(std::uint32_t p) const {
  std::map<Monomial, linalg::Fp, MonomialOrder> out;
  for (const auto& [m, c] : terms_) {
    Integer r = c % p;
    if (r < 0) r += p;
    if (r != 0) out[m] = linalg::Fp(r.get_si(), p);
  }
  return out;
}

std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << '*';
    if (m[i].a < 10 && m[i].b < 10 && m[i].a > 0 && m[i].b > 0)
      os << 'a' << m[i].a << m[i].b;
    else
      os << "a(" << m[i].a << ',' << m[i].b << ')';
  }
  return os.str();
}

Monomial parse_monomial(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "1" || s.empty()) return {};
  Monomial m;
  std::size_t i = 0;
  auto fail = [&]() { throw InvalidArgument("cannot parse monomial '" + text + "'"); };
  while (i < s.size()) {
    if (s[i] != 'a') fail();
    ++i;
    if (i < s.size() && s[i] == '(') {
      std::size_t close = s.find(')', i);
      std::size_t comma = s.find(',', i);
      if (close == std::string::npos || comma == std::string::npos || comma > close) fail();
      m.push_back({std::stoi(s.substr(i + 1, comma - i - 1)), std::stoi(s.substr(comma + 1, close - comma - 1))});
      i = close + 1;
    } else {
      if (i + 1 >= s.size() || !isdigit(static_cast<unsigned char>(s[i])) || !isdigit(static_cast<unsigned char>(s[i + 1]))) fail();
      m.push_back({s[i] - '0', s[i + 1] - '0'});
      i += 2;
    }
    if (i < s.size()) {
      if (s[i] != '*') fail();
      ++i;
    }
  }
  return m;
}

std::vector<Monomial> admissible_basis(int k, int n, int degree) {
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  if (n < 2) throw InvalidArgument("n must be at least 2");
  std::vector<Monomial> out;
  if (degree < 0 || degree % (n - 1) != 0) return out;
  const int m = degree / (n - 1);
  if (m > std::max(0, k - 1)) return out;
  Monomial cur;
  // choose b_1 < ... < b_m in [2, k] and a_l in [1, b_l - 1]
  auto rec = [&](auto&& self, int next_b) -> void {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int b = next_b; b <= k; ++b) {
      if (k - b < m - static_cast<int>(cur.size()) - 1) break;
      for (int a = 1; a < b; ++a) {
        cur.push_back({a, b});
        self(self, b + 1);
        cur.pop_back();
      }
    }
  };
  rec(rec, 2);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

namespace {

// Orients every factor as a < b and sorts by (b, a). Returns the sign picked up, or 0 if
// the product vanishes because of a repeated generator.
int canonicalize(Monomial& w, int k, int n) {
  int sign = 1;
  const int antipodal = (n % 2 == 0) ? 1 : -1;  // (-1)^n
  const int koszul = (n % 2 == 0) ? -1 : 1;     // (-1)^{(n-1)^2}
  for (auto& g : w) {
    if (g.a < 1 || g.a > k || g.b < 1 || g.b > k || g.a == g.b)
      throw InvalidArgument("generator index out of range or repeated: a" + std::to_string(g.a) + "," + std::to_string(g.b));
    if (g.a > g.b) {
      std::swap(g.a, g.b);
      sign *= antipodal;
    }
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0; --j) {
      auto& x = w[j - 1];
      auto& y = w[j];
      if (x.b < y.b || (x.b == y.b && x.a < y.a)) break;
      if (x == y) return 0;
      std::swap(x, y);
      sign *= koszul;
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;
  return sign;
}

}  // namespace

CohomologyClass normal_form(const std::vector<std::pair<Monomial, Integer>>& combination, int k, int n,
                            Strategy strategy, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  CohomologyClass result(Context{k, n});
  std::map<Monomial, Integer, MonomialOrder> pending;
  auto push = [&](Monomial w, const Integer& c) {
    int s = canonicalize(w, k, n);
    if (s == 0 || sgn(c) == 0) return;
    auto& slot = pending[w];
    slot += s > 0 ? c : Integer(-c);
    if (sgn(slot) == 0) pending.erase(w);
  };
  for (const auto& [w, c] : combination) push(w, c);

  std::mt19937_64 rng(seed);
  const Integer eps = (n % 2 == 0) ? -1 : 1;  // Koszul sign of one transposition
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    Monomial w = it->first;
    Integer c = it->second;
    pending.erase(it);
    if (is_admissible(w)) {
      result.add_term(w, c);
      continue;
    }
    // positions i with w[i].b == w[i+1].b
    std::vector<std::size_t> adjacent;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].b == w[i + 1].b) adjacent.push_back(i);
    std::size_t i;
    if (strategy == Strategy::Canonical) {
      i = adjacent.back();  // sorted by (b, a): the last such pair is the top cluster's last two
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, adjacent.size() - 1);
      i = adjacent[pick(rng)];
    }
    const int a1 = w[i].a, a2 = w[i + 1].a, b = w[i].b;
    // a_{a1 b} a_{a2 b} = a_{a1 a2} a_{a2 b} - eps * a_{a1 b} a_{a1 a2}
    Monomial first = w, second = w;
    first[i] = {a1, a2};
    first[i + 1] = {a2, b};
    second[i] = {a1, b};
    second[i + 1] = {a1, a2};
    push(std::move(first), c);
    push(std::move(second), -eps * c);
  }
  return result;
}

CohomologyClass normal_form(const Monomial& word, int k, int n, Strategy strategy, std::uint64_t seed) {
  return normal_form(std::vector<std::pair<Monomial, Integer>>{{word, Integer(1)}}, k, n, strategy, seed);
}

CohomologyClass multiply(const CohomologyClass& x, const CohomologyClass& y) {
  if (!(x.context() == y.context())) throw InvalidArgument("multiply: context mismatch");
  std::vector<std::pair<Monomial, Integer>> words;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      Monomial w = mx;
      w.insert(w.end(), my.begin(), my.end());
      words.emplace_back(std::move(w), cx * cy);
    }
  return normal_form(words, x.context().k, x.context().n);
}

CohomologyClass sigma_act(const Permutation& perm, const CohomologyClass& x) {
  if (static_cast<int>(perm.size()) != x.context().k) throw InvalidArgument("sigma_act: permutation size differs from k");
  check_permutation(perm);
  std::vector<std::pair<Monomial, Integer>> words;
  for (const auto& [m, c] : x.terms()) {
    Monomial w = m;
    for (auto& g : w) g = {perm[g.a - 1], perm[g.b - 1]};
    words.emplace_back(std::move(w), c);
  }
  return normal_form(words, x.context().k, x.context().n);
}

PoincareSeries poincare_polynomial(int k, int n) {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  PoincareSeries p = PoincareSeries::one(std::nullopt, 0);
  for (int j = 1; j <= k - 1; ++j) {
    PoincareSeries f(std::nullopt, 0);
    f.add_term(0, 0, 1);
    f.add_term(n - 1, 0, j);
    p = p * f;
  }
  return p;
}

PoincareSeries poincare_by_census(int k, int n) {
  PoincareSeries p(std::nullopt, 0);
  for (int m = 0; m <= std::max(0, k - 1); ++m) {
    auto basis = admissible_basis(k, n, m * (n - 1));
    p.add_term(m * (n - 1), 0, static_cast<long>(basis.size()));
  }
  return p;
}

}  // namespace confspace::arnold

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "confspace/arnold.hpp"
#include "confspace/braid.hpp"
#include "confspace/ce.hpp"
#include "confspace/error.hpp"
#include "confspace/forest.hpp"
#include "confspace/modp.hpp"
#include "confspace/presets.hpp"
#include "json.hpp"

using namespace confspace;
using nlohmann::json;

namespace {

constexpr const char* kCsvColumns = R"(CSV column orders:
  arnold poincare        degree,dim
  arnold basis           index,monomial
  arnold normalform      monomial,coefficient
  forest basis           index,forest
  forest rewrite         forest,coefficient
  forest pair            forest,<one column per admissible monomial>
  unordered-betti        degree,dim
  ce betti               k,i,dim
  ce stability           k,i,source_dim,target_dim,induced_rank,iso
  ce euler               k,chi_chains,chi_sym
  ce labeled-check       weight,degree,lhs,rhs
  braid present          index,relator
  braid subgroup         generator,word
  braid verify           family,statement,artin_ok,rewrite_ok,passed
  modp vanishing         t,dim,homology,vanishes,orbit_certificate
  modp invariants        t,dim,closed_form
  modp tate              s,dim
  modp cohen             degree,dim
  modp swan              p,period
  selftest               id,title,passed,seconds,budget,detail)";

struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::string text;  // preferred rendering for the table format, when set
  json doc;          // preferred rendering for json, when set
  int status = 0;
};

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const Output& out, const std::string& format, std::ostream& os) {
  if (format == "json") {
    if (!out.doc.is_null()) {
      os << out.doc.dump(2) << "\n";
      return;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : out.rows) {
      nlohmann::ordered_json o = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < out.columns.size(); ++i) o[out.columns[i]] = nlohmann::ordered_json::parse(r[i].dump());
      arr.push_back(o);
    }
    os << arr.dump(2) << "\n";
  } else if (format == "csv") {
    for (std::size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << csv_field(out.columns[i]);
    os << "\n";
    for (const auto& r : out.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(cell(r[i]));
      os << "\n";
    }
  } else if (!out.text.empty()) {
    os << out.text << (out.text.back() == '\n' ? "" : "\n");
  } else {
    std::vector<std::size_t> width(out.columns.size());
    for (std::size_t i = 0; i < out.columns.size(); ++i) width[i] = out.columns[i].size();
    for (const auto& r : out.rows)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], cell(r[i]).size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "  " : "");
        if (i + 1 < cells.size()) os << std::left << std::setw(static_cast<int>(width[i]));
        os << cells[i];
      }
      os << "\n";
    };
    line(out.columns);
    for (const auto& r : out.rows) {
      std::vector<std::string> cells;
      for (const auto& v : r) cells.push_back(cell(v));
      line(cells);
    }
  }
}

int default_workers() {
  if (const char* env = std::getenv("CONFSPACE_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs job(0..count-1) on up to `workers` threads; progress goes to stderr only.
void parallel_for(int count, int workers, bool progress, const std::string& label, const std::function<void(int)>& job) {
  std::atomic<int> next{0}, done{0};
  std::mutex io;
  std::exception_ptr failure;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(io);
        if (!failure) failure = std::current_exception();
      }
      const int d = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(io);
        std::cerr << "[" << label << "] " << d << "/" << count << " blocks done\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::min(workers, count); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void add_dims(Output& out, const GradedDims& d) {
  out.columns = {"degree", "dim"};
  for (const auto& [deg, dim] : d.entries()) out.rows.push_back({deg, dim});
}

json dims_json(const GradedDims& d) {
  json o = json::object();
  for (const auto& [deg, dim] : d.entries()) o[std::to_string(deg)] = dim;
  return o;
}

struct Options {
  int k = 3, n = 2, degree = 0, p = 5, r = 2, t = 0, kmax = 6, point = 0, perturb = -1;
  int smin = -6, smax = 6, max_degree = -1;
  std::uint32_t characteristic = 0;
  bool through = false, twist = false, symmetric = false;
  std::string preset, algebra, word, forest, kind = "kernel";
  std::vector<int> only;
};

ce::CAlgebra algebra_of(const Options& o) {
  if (!o.algebra.empty()) return ce::load_algebra_file(o.algebra);
  if (o.preset.empty()) throw InvalidArgument("give --preset NAME or --algebra FILE");
  return ce::preset(o.preset);
}

Output arnold_poincare(const Options& o) {
  auto s = arnold::poincare_polynomial(o.k, o.n);
  Output out;
  out.text = s.to_string();
  out.columns = {"degree", "dim"};
  json coeffs = json::object();
  for (const auto& [key, c] : s.terms()) {
    out.rows.push_back({key.second, c.get_str()});
    coeffs[std::to_string(key.second)] = c.get_str();
  }
  out.doc = {{"k", o.k}, {"n", o.n}, {"polynomial", out.text}, {"coefficients", coeffs}};
  return out;
}

Output arnold_basis(const Options& o) {
  Output out;
  out.columns = {"index", "monomial"};
  int i = 0;
  for (const auto& m : arnold::admissible_basis(o.k, o.n, o.degree))
    out.rows.push_back({i++, m.empty() ? std::string("1") : arnold::monomial_to_string(m)});
  return out;
}

Output arnold_normalform(const Options& o) {
  auto nf = arnold::normal_form(arnold::parse_monomial(o.word), o.k, o.n);
  Output out;
  out.text = nf.is_zero() ? "0" : nf.to_string();
  out.columns = {"monomial", "coefficient"};
  for (const auto& [m, c] : nf.terms())
    out.rows.push_back({m.empty() ? std::string("1") : arnold::monomial_to_string(m), c.get_str()});
  out.doc = nf.to_json();
  return out;
}

Output forest_basis(const Options& o) {
  Output out;
  out.columns = {"index", "forest"};
  int i = 0;
  for (const auto& f : forest::tall_basis(o.k, o.n, o.degree)) out.rows.push_back({i++, forest::forest_to_string(f)});
  return out;
}

Output forest_rewrite(const Options& o) {
  auto h = forest::rewrite_to_tall(forest::parse_forest(o.forest), o.n);
  Output out;
  out.text = h.is_zero() ? "0" : h.to_string();
  out.columns = {"forest", "coefficient"};
  for (const auto& [f, c] : h.terms()) out.rows.push_back({forest::forest_to_string(f), c.get_str()});
  out.doc = h.to_json();
  return out;
}

Output forest_pair(const Options& o) {
  auto m = forest::pairing_matrix(o.k, o.n, o.degree);
  auto rows = forest::tall_basis(o.k, o.n, o.degree);
  auto cols = arnold::admissible_basis(o.k, o.n, o.degree);
  auto snf = linalg::smith_normal_form(m);
  bool unimodular = snf.rank == rows.size();
  for (const auto& f : snf.invariant_factors) unimodular = unimodular && f == 1;

  Output out;
  out.columns = {"forest"};
  for (const auto& c : cols) out.columns.push_back(c.empty() ? "1" : arnold::monomial_to_string(c));
  json matrix = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<json> row{forest::forest_to_string(rows[i])};
    json mrow = json::array();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const long v = m.get(i, j).get_si();
      row.push_back(v);
      mrow.push_back(v);
    }
    out.rows.push_back(row);
    matrix.push_back(mrow);
  }
  json rnames = json::array();
  for (const auto& r : out.rows) rnames.push_back(r[0]);
  out.doc = {{"rows", rnames},
             {"columns", json(std::vector<std::string>(out.columns.begin() + 1, out.columns.end()))},
             {"matrix", matrix},
             {"unimodular", unimodular}};
  return out;
}

Output unordered_betti(const Options& o) {
  Output out;
  add_dims(out, forest::coinvariants_dims(o.k, o.n, o.characteristic));
  return out;
}

Output ce_betti(const Options& o, int workers, bool progress) {
  auto g = ce::GMLie::build(algebra_of(o));
  const int first = o.through ? 0 : o.k;
  const int count = o.k - first + 1;
  std::vector<GradedDims> result(static_cast<std::size_t>(count));
  // heaviest weights first
  parallel_for(count, workers, progress, "ce betti", [&](int j) {
    const int w = o.k - j;
    result[static_cast<std::size_t>(w - first)] = ce::betti(g, w);
  });
  Output out;
  out.columns = {"k", "i", "dim"};
  json doc = json::object();
  for (int w = first; w <= o.k; ++w) {
    const auto& d = result[static_cast<std::size_t>(w - first)];
    for (const auto& [i, dim] : d.entries()) out.rows.push_back({w, i, dim});
    doc[std::to_string(w)] = dims_json(d);
  }
  out.doc = {{"manifold", g.name()}, {"betti", doc}};
  return out;
}

Output ce_stability(const Options& o) {
  auto rep = ce::stability_report(ce::GMLie::build(algebra_of(o)), o.kmax);
  Output out;
  out.columns = {"k", "i", "source_dim", "target_dim", "induced_rank", "iso"};
  for (const auto& e : rep.entries) out.rows.push_back({e.k, e.i, e.source_dim, e.target_dim, e.induced_rank, e.iso});
  if (!rep.chain_maps_ok || !rep.stable_range_holds()) out.status = 1;
  return out;
}

Output ce_euler(const Options& o) {
  auto e = ce::euler_series(ce::GMLie::build(algebra_of(o)), o.kmax);
  Output out;
  out.columns = {"k", "chi_chains", "chi_sym"};
  for (int k = 0; k <= o.kmax; ++k)
    out.rows.push_back({k, e.by_chains.coeff(0, k).get_str(), e.by_sym.coeff(0, k).get_str()});
  if (!e.agree) out.status = 1;
  return out;
}

Output ce_labeled(const Options& o) {
  const int window = o.max_degree < 0 ? 20 : o.max_degree;
  auto c = ce::labeled_series_check(algebra_of(o), o.r, window);
  Output out;
  out.columns = {"weight", "degree", "lhs", "rhs"};
  std::set<std::pair<int, int>> keys;
  for (const auto& [key, v] : c.lhs.terms()) keys.insert(key);
  for (const auto& [key, v] : c.rhs.terms()) keys.insert(key);
  for (const auto& [w, d] : keys)
    out.rows.push_back({w, d, c.lhs.coeff(d, w).get_str(), c.rhs.coeff(d, w).get_str()});
  if (!c.equal) out.status = 1;
  return out;
}

Output braid_present(const Options& o) {
  auto p = o.symmetric ? braid::symmetric_presentation(o.k) : braid::braid_presentation(o.k);
  Output out;
  out.text = p.to_string();
  out.columns = {"index", "relator"};
  int i = 0;
  for (const auto& r : p.relators()) out.rows.push_back({i++, p.word_to_string(r)});
  out.doc = {{"generators", p.generators()}, {"presentation", out.text}};
  return out;
}

Output braid_subgroup(const Options& o) {
  auto bk = braid::braid_presentation(o.k);
  std::vector<Permutation> images;
  for (int i = 1; i < o.k; ++i) images.push_back(transposition(o.k, i, i + 1));
  braid::SubgroupKind kind;
  if (o.kind == "kernel")
    kind = braid::SubgroupKind::Kernel;
  else if (o.kind == "stabilizer")
    kind = braid::SubgroupKind::Stabilizer;
  else
    throw InvalidArgument("--kind must be kernel or stabilizer");
  auto table = braid::coset_table_from_hom(bk, images, kind, o.point > 0 ? o.point : o.k);
  auto sp = braid::subgroup_presentation(bk, table, braid::schreier_transversal(table));
  const auto ab = braid::abelianize(sp.presentation).to_string();

  Output out;
  std::ostringstream text;
  text << "index " << table.size << "\n" << sp.presentation.to_string() << "\nabelianization " << ab;
  out.text = text.str();
  out.columns = {"generator", "word"};
  for (std::size_t i = 0; i < sp.generator_words.size(); ++i)
    out.rows.push_back({sp.presentation.generators()[i], bk.word_to_string(sp.generator_words[i])});
  json rels = json::array();
  for (const auto& r : sp.presentation.relators()) rels.push_back(sp.presentation.word_to_string(r));
  out.doc = {{"index", table.size},
             {"generators", sp.presentation.generators()},
             {"relators", rels},
             {"abelianization", ab}};
  return out;
}

Output braid_verify(const Options& o) {
  auto rep = braid::verify_braid_relations(o.k, o.perturb);
  Output out;
  out.columns = {"family", "statement", "artin_ok", "rewrite_ok", "passed"};
  for (const auto& c : rep.checks) out.rows.push_back({c.family, c.statement, c.artin_ok, c.rewrite_ok, c.passed()});
  if (!rep.all_passed()) out.status = 1;
  return out;
}

Output modp_vanishing(const Options& o) {
  auto rep = modp::verify_vanishing(static_cast<std::uint32_t>(o.p), o.n);
  Output out;
  out.columns = {"t", "dim", "homology", "vanishes", "orbit_certificate"};
  for (const auto& e : rep.entries)
    out.rows.push_back({e.t, e.dim, e.homology.to_string(), e.vanishes, e.orbit_certificate});
  if (!rep.holds()) out.status = 1;
  return out;
}

Output modp_invariants(const Options& o) {
  auto inv = modp::invariants_sigma_p(static_cast<std::uint32_t>(o.p), o.n);
  auto closed = modp::invariants_closed_form(o.n);
  Output out;
  out.columns = {"t", "dim", "closed_form"};
  for (int t = 0; t <= (o.n - 1) * (o.p - 1); t += std::max(1, o.n - 1)) out.rows.push_back({t, inv[t], closed[t]});
  if (o.p <= 3) std::cerr << "note: p = " << o.p << " lies outside the p > 3 range; the closed form is not expected\n";
  return out;
}

Output modp_tate(const Options& o) {
  auto v = modp::conf_module(static_cast<std::uint32_t>(o.p), o.n, o.t, o.twist);
  auto td = modp::tate(v, o.smin, o.smax);
  Output out;
  out.columns = {"s", "dim"};
  for (const auto& [s, d] : td.dims) out.rows.push_back({s, d});
  return out;
}

Output modp_cohen(const Options& o) {
  const int window = o.max_degree < 0 ? o.n * o.p : o.max_degree;
  auto s = modp::cohen_series(static_cast<std::uint32_t>(o.p), o.n, window);
  Output out;
  out.text = s.to_string();
  out.columns = {"degree", "dim"};
  for (const auto& [key, c] : s.terms()) out.rows.push_back({key.second, c.get_str()});
  return out;
}

Output modp_swan(const Options& o) {
  const int period = modp::swan_period(static_cast<std::uint32_t>(o.p));
  Output out;
  out.text = std::to_string(period);
  out.columns = {"p", "period"};
  out.rows.push_back({o.p, period});
  out.doc = {{"p", o.p}, {"swan_period", period}};
  return out;
}

Output selftest(const Options& o, int workers, bool progress) {
  acceptance::Options opts;
  opts.only = std::set<int>(o.only.begin(), o.only.end());
  opts.workers = workers;
  if (progress) opts.log = &std::cerr;
  auto results = acceptance::run(opts);
  Output out;
  out.columns = {"id", "title", "passed", "seconds", "budget", "detail"};
  std::ostringstream text;
  int passed = 0;
  for (const auto& r : results) {
    out.rows.push_back({r.id, r.title, r.passed(), r.seconds, r.budget_seconds, r.detail});
    text << acceptance::format_line(r) << "\n";
    passed += r.passed() ? 1 : 0;
  }
  text << passed << "/" << results.size() << " criteria passed";
  out.text = text.str();
  if (passed != static_cast<int>(results.size())) out.status = 1;
  return out;
}

// Stress target: weight-k Betti numbers of the closed genus-3 surface. Large k is not expected
// to finish; nothing here is asserted.
Output stress(const Options& o, bool progress) {
  auto g = ce::GMLie::build(ce::preset("closed-surface-3"));
  if (progress) std::cerr << "[stress] building weight-" << o.k << " block\n";
  Output out;
  add_dims(out, ce::betti(g, o.k));
  return out;
}

void print_error(const std::string& code, const std::string& message, bool as_json) {
  if (as_json)
    std::cout << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
  else
    std::cerr << "error [" << code << "]: " << message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  bool error_json = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--error-json") == 0) error_json = true;

  CLI::App app{"Homology and cohomology of configuration spaces"};
  app.footer(kCsvColumns);
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  int workers = default_workers();
  bool progress = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--workers", workers, "Worker threads (default: CONFSPACE_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--progress", progress, "Report progress on stderr");
  app.add_flag("--error-json", error_json, "Print failures as a JSON object on stdout");

  Options o;
  std::function<Output()> action;
  auto on = [&](CLI::App* sub, std::function<Output()> f) { sub->callback([&action, f] { action = f; }); };
  auto add_k = [&](CLI::App* s, int lo = 1) { s->add_option("--k", o.k, "Number of points")->required()->check(CLI::Range(lo, 200)); };
  auto add_n = [&](CLI::App* s) { s->add_option("--n", o.n, "Ambient dimension")->required()->check(CLI::Range(1, 64)); };
  auto add_p = [&](CLI::App* s) { s->add_option("--p", o.p, "Prime")->required()->check(CLI::Range(2, 16381)); };
  auto add_manifold = [&](CLI::App* s) {
    auto* pr = s->add_option("--preset", o.preset, "Preset manifold name");
    auto* al = s->add_option("--algebra", o.algebra, "Algebra JSON file")->check(CLI::ExistingFile);
    pr->excludes(al);
  };

  auto* arnold_cmd = app.add_subcommand("arnold", "Cohomology ring of ordered configurations in R^n");
  arnold_cmd->require_subcommand(1)->fallthrough();
  auto* ap = arnold_cmd->add_subcommand("poincare", "Poincare polynomial");
  add_k(ap), add_n(ap);
  on(ap, [&] { return arnold_poincare(o); });
  auto* ab = arnold_cmd->add_subcommand("basis", "Admissible monomial basis in one degree");
  add_k(ab), add_n(ab);
  ab->add_option("--degree", o.degree, "Cohomological degree")->required()->check(CLI::NonNegativeNumber);
  on(ab, [&] { return arnold_basis(o); });
  auto* an = arnold_cmd->add_subcommand("normalform", "Reduce a product of generators to the admissible basis");
  add_k(an), add_n(an);
  an->add_option("--word", o.word, "Product such as a13*a12 or a(10,11)")->required();
  on(an, [&] { return arnold_normalform(o); });

  auto* forest_cmd = app.add_subcommand("forest", "Homology of ordered configurations via forests");
  forest_cmd->require_subcommand(1)->fallthrough();
  auto* fb = forest_cmd->add_subcommand("basis", "Tall-forest basis in one degree");
  add_k(fb), add_n(fb);
  fb->add_option("--degree", o.degree, "Homological degree")->required()->check(CLI::NonNegativeNumber);
  on(fb, [&] { return forest_basis(o); });
  auto* fr = forest_cmd->add_subcommand("rewrite", "Express a forest in the tall basis");
  add_n(fr);
  fr->add_option("--forest", o.forest, "Forest such as ((23)1),4")->required();
  on(fr, [&] { return forest_rewrite(o); });
  auto* fp = forest_cmd->add_subcommand("pair", "Pairing matrix of tall forests against admissible monomials");
  add_k(fp), add_n(fp);
  fp->add_option("--degree", o.degree, "Degree")->required()->check(CLI::NonNegativeNumber);
  on(fp, [&] { return forest_pair(o); });

  auto* ub = app.add_subcommand("unordered-betti", "Betti numbers of unordered configurations in R^n via coinvariants");
  add_k(ub), add_n(ub);
  ub->add_option("--char", o.characteristic, "Field characteristic (0 or a prime larger than k)");
  on(ub, [&] { return unordered_betti(o); });

  auto* ce_cmd = app.add_subcommand("ce", "Unordered configurations in a manifold via Chevalley-Eilenberg homology");
  ce_cmd->require_subcommand(1)->fallthrough();
  auto* cb = ce_cmd->add_subcommand("betti", "Betti numbers of B_k(M)");
  add_manifold(cb);
  add_k(cb, 0);
  cb->add_flag("--through", o.through, "All weights 0..k");
  on(cb, [&] { return ce_betti(o, workers, progress); });
  auto* cs = ce_cmd->add_subcommand("stability", "Stabilization maps on homology (n >= 3)");
  add_manifold(cs);
  cs->add_option("--kmax", o.kmax, "Largest weight")->check(CLI::Range(1, 40));
  on(cs, [&] { return ce_stability(o); });
  auto* cu = ce_cmd->add_subcommand("euler", "Euler characteristics two ways");
  add_manifold(cu);
  cu->add_option("--kmax", o.kmax, "Largest weight")->check(CLI::Range(0, 60));
  on(cu, [&] { return ce_euler(o); });
  auto* cl = ce_cmd->add_subcommand("labeled-check", "Bigraded series identity for labeled configurations");
  add_manifold(cl);
  cl->add_option("--r", o.r, "Label sphere shift (even, > 1)")->check(CLI::Range(1, 64));
  cl->add_option("--max-degree", o.max_degree, "Degree window (default 20)")->check(CLI::NonNegativeNumber);
  on(cl, [&] { return ce_labeled(o); });

  auto* braid_cmd = app.add_subcommand("braid", "Braid group presentations");
  braid_cmd->require_subcommand(1)->fallthrough();
  auto* bp = braid_cmd->add_subcommand("present", "Artin presentation");
  add_k(bp, 2);
  bp->add_flag("--symmetric", o.symmetric, "The symmetric group instead");
  on(bp, [&] { return braid_present(o); });
  auto* bs = braid_cmd->add_subcommand("subgroup", "Reidemeister-Schreier presentation of a subgroup of B_k");
  add_k(bs, 2);
  bs->add_option("--kind", o.kind, "kernel (pure braids) or stabilizer")->check(CLI::IsMember({"kernel", "stabilizer"}));
  bs->add_option("--point", o.point, "Strand fixed by the stabilizer (default k)")->check(CLI::PositiveNumber);
  on(bs, [&] { return braid_subgroup(o); });
  auto* bv = braid_cmd->add_subcommand("verify", "Check the coset and semidirect-product relations");
  add_k(bv, 3);
  bv->add_option("--perturb", o.perturb, "Corrupt one check (negative control)");
  on(bv, [&] { return braid_verify(o); });

  auto* modp_cmd = app.add_subcommand("modp", "Mod-p cohomology of B_p(R^n)");
  modp_cmd->require_subcommand(1)->fallthrough();
  auto* mv = modp_cmd->add_subcommand("vanishing", "Cyclic-group homology in the interior degrees");
  add_p(mv), add_n(mv);
  on(mv, [&] { return modp_vanishing(o); });
  auto* mi = modp_cmd->add_subcommand("invariants", "Symmetric-group invariants per degree");
  add_p(mi), add_n(mi);
  on(mi, [&] { return modp_invariants(o); });
  auto* mt = modp_cmd->add_subcommand("tate", "Tate cohomology of C_p on one homology piece");
  add_p(mt), add_n(mt);
  mt->add_option("--t", o.t, "Homological degree of the piece")->required();
  mt->add_flag("--twist", o.twist, "Tensor with the sign representation");
  mt->add_option("--smin", o.smin, "Window start");
  mt->add_option("--smax", o.smax, "Window end");
  on(mt, [&] { return modp_tate(o); });
  auto* mc = modp_cmd->add_subcommand("cohen", "Closed-form Poincare series (p > 3)");
  add_p(mc), add_n(mc);
  mc->add_option("--max-degree", o.max_degree, "Truncation (default n p)")->check(CLI::NonNegativeNumber);
  on(mc, [&] { return modp_cohen(o); });
  auto* ms = modp_cmd->add_subcommand("swan", "Cohomological period of Sigma_p");
  add_p(ms);
  on(ms, [&] { return modp_swan(o); });

  auto* st = app.add_subcommand("selftest", "Run the acceptance criteria");
  st->add_option("--only", o.only, "Criterion ids")->check(CLI::Range(1, acceptance::criterion_count()));
  on(st, [&] { return selftest(o, workers, progress); });

  auto* sx = app.add_subcommand("stress", "Unasserted large computation on the closed genus-3 surface");
  add_k(sx, 0);
  on(sx, [&] { return stress(o, progress); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (!error_json) return app.exit(e);
    print_error("usage", e.what(), true);
    return 2;
  }

  try {
    Output out = action();
    emit(out, format, std::cout);
    return out.status;
  } catch (const Error& e) {
    print_error(e.code(), e.what(), error_json);
    return 3;
  } catch (const std::exception& e) {
    print_error("internal-error", e.what(), error_json);
    return 4;
  }
}

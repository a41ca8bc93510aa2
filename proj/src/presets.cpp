#include "confspace/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <regex>

namespace confspace::ce {

namespace {

using nlohmann::json;

json basis_entry(const std::string& name, int degree) { return {{"name", name}, {"degree", degree}}; }

json product_entry(const std::string& l, const std::string& r, const std::string& res, int coeff) {
  return {{"left", l}, {"right", r}, {"result", json::array({{{"basis", res}, {"coeff", coeff}}})}};
}

json euclidean(int n) {
  return {{"name", "euclidean-" + std::to_string(n)},
          {"ambient_dim", n},
          {"basis", json::array({basis_entry("pt", n)})},
          {"products", json::array()}};
}

// Open surface of genus g with b >= 1 punctures: H_c^1 has a symplectic part a_i, b_i
// and b - 1 classes in the radical of the cup product.
json punctured_surface(int g, int b) {
  json j{{"name", "punctured-surface-" + std::to_string(g) + "-" + std::to_string(b)}, {"ambient_dim", 2}};
  json basis = json::array(), products = json::array();
  for (int i = 1; i <= g; ++i) {
    basis.push_back(basis_entry("a" + std::to_string(i), 1));
    basis.push_back(basis_entry("b" + std::to_string(i), 1));
    products.push_back(product_entry("a" + std::to_string(i), "b" + std::to_string(i), "pt", 1));
    products.push_back(product_entry("b" + std::to_string(i), "a" + std::to_string(i), "pt", -1));
  }
  for (int i = 1; i < b; ++i) basis.push_back(basis_entry("c" + std::to_string(i), 1));
  basis.push_back(basis_entry("pt", 2));
  j["basis"] = basis;
  j["products"] = products;
  return j;
}

json closed_surface(int g) {
  json j{{"name", "closed-surface-" + std::to_string(g)}, {"ambient_dim", 2}};
  json basis = json::array({basis_entry("1", 0)}), products = json::array();
  std::vector<std::pair<std::string, int>> all{{"1", 0}};
  for (int i = 1; i <= g; ++i) {
    basis.push_back(basis_entry("a" + std::to_string(i), 1));
    basis.push_back(basis_entry("b" + std::to_string(i), 1));
    all.emplace_back("a" + std::to_string(i), 1);
    all.emplace_back("b" + std::to_string(i), 1);
    products.push_back(product_entry("a" + std::to_string(i), "b" + std::to_string(i), "pt", 1));
    products.push_back(product_entry("b" + std::to_string(i), "a" + std::to_string(i), "pt", -1));
  }
  basis.push_back(basis_entry("pt", 2));
  all.emplace_back("pt", 2);
  for (const auto& [name, deg] : all) {
    products.push_back(product_entry("1", name, name, 1));
    if (name != "1") products.push_back(product_entry(name, "1", name, 1));
  }
  j["basis"] = basis;
  j["products"] = products;
  return j;
}

// Interior of a genus-g handlebody: H_1 of rank g, so H_c^2 of rank g, all products zero.
json handlebody(int g) {
  json basis = json::array();
  for (int i = 1; i <= g; ++i) basis.push_back(basis_entry("u" + std::to_string(i), 2));
  basis.push_back(basis_entry("pt", 3));
  return {{"name", "handlebody-" + std::to_string(g)}, {"ambient_dim", 3}, {"basis", basis}, {"products", json::array()}};
}

json r3_minus(int m) {
  json basis = json::array();
  for (int i = 1; i <= m; ++i) basis.push_back(basis_entry("s" + std::to_string(i), 1));
  basis.push_back(basis_entry("pt", 3));
  return {{"name", "r3-minus-" + std::to_string(m)}, {"ambient_dim", 3}, {"basis", basis}, {"products", json::array()}};
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("CONFSPACE_DATA")) return env;
  return CONFSPACE_DATA_DIR;
}

CAlgebra preset(const std::string& name) {
  std::smatch m;
  auto num = [&](int i) { return std::stoi(m[i].str()); };
  if (std::regex_match(name, m, std::regex(R"(euclidean-(\d+))"))) {
    if (num(1) < 1) throw InvalidArgument("euclidean preset needs n >= 1");
    return CAlgebra::from_json(euclidean(num(1)));
  }
  if (std::regex_match(name, m, std::regex(R"(punctured-surface-(\d+)-(\d+))"))) {
    if (num(2) < 1) throw InvalidArgument("punctured surface needs at least one puncture");
    return CAlgebra::from_json(punctured_surface(num(1), num(2)));
  }
  if (std::regex_match(name, m, std::regex(R"(closed-surface-(\d+))"))) return CAlgebra::from_json(closed_surface(num(1)));
  if (std::regex_match(name, m, std::regex(R"(handlebody-(\d+))"))) return CAlgebra::from_json(handlebody(num(1)));
  if (std::regex_match(name, m, std::regex(R"(r3-minus-(\d+))"))) return CAlgebra::from_json(r3_minus(num(1)));
  if (!std::regex_match(name, std::regex(R"([a-z0-9-]+)"))) throw InvalidArgument("bad preset name '" + name + "'");
  std::filesystem::path path = std::filesystem::path(data_dir()) / "presets" / (name + ".json");
  if (!std::filesystem::exists(path)) throw InvalidArgument("unknown preset '" + name + "' (looked for " + path.string() + ")");
  return load_algebra_file(path.string());
}

std::vector<std::string> preset_catalog() {
  return {"euclidean-2",        "euclidean-3",      "euclidean-4",      "punctured-torus", "twice-punctured-plane",
          "punctured-surface-1-2", "punctured-surface-2-1", "closed-surface-0", "closed-surface-1", "closed-surface-2",
          "solid-torus",        "s1xr2",            "handlebody-0",     "handlebody-1",    "handlebody-2",
          "handlebody-3",       "r3-minus-1",       "r3-minus-2",       "r3-minus-3",      "cp2-minus-point"};
}

}  // namespace confspace::ce

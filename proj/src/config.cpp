#include "fockbench/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace fockbench::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

class Cursor {
 public:
  explicit Cursor(std::string text) : text_(std::move(text)) {}
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool done() { return pos_ >= text_.size(); }
  char peek() { return text_[pos_]; }
  char take() { return text_[pos_++]; }

  Value parse_value() {
    skip_ws();
    detail::require(!done(), "config: unexpected end of value");
    const char c = peek();
    if (c == '[') return parse_array();
    if (c == '"' || c == '\'') return parse_string();
    return parse_scalar();
  }

 private:
  Value parse_array() {
    take();  // '['
    Value v;
    v.kind = Value::Kind::array;
    skip_ws();
    if (!done() && peek() == ']') {
      take();
      return v;
    }
    for (;;) {
      v.items.push_back(parse_value());
      skip_ws();
      detail::require(!done(), "config: unterminated array");
      const char c = take();
      if (c == ']') break;
      detail::require(c == ',', "config: expected ',' or ']' in array");
      skip_ws();
      if (!done() && peek() == ']') {  // trailing comma
        take();
        break;
      }
    }
    return v;
  }

  Value parse_string() {
    const char quote = take();
    std::string out;
    while (!done() && peek() != quote) out += take();
    detail::require(!done(), "config: unterminated string");
    take();
    Value v;
    v.kind = Value::Kind::string;
    v.text = std::move(out);
    return v;
  }

  Value parse_scalar() {
    std::string tok;
    while (!done() && peek() != ',' && peek() != ']' && peek() != '#' &&
           peek() != '\n')
      tok += take();
    tok = trim(tok);
    detail::require(!tok.empty(), "config: empty value");
    Value v;
    if (tok == "true" || tok == "false") {
      v.kind = Value::Kind::boolean;
      v.boolean = tok == "true";
      return v;
    }
    try {
      std::size_t used = 0;
      v.number = std::stod(tok, &used);
      detail::require(used == tok.size(),
                      "config: malformed number '" + tok + "'");
      v.kind = Value::Kind::number;
      return v;
    } catch (const std::invalid_argument&) {
      detail::require(false, "config: malformed value '" + tok + "'");
    }
    return v;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile file;
  std::istringstream in(text);
  std::string raw;
  std::string pending;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = pending + raw;
    // strip comments outside strings
    bool in_string = false;
    char quote = 0;
    std::string body;
    for (char c : line) {
      if (in_string) {
        body += c;
        if (c == quote) in_string = false;
        continue;
      }
      if (c == '"' || c == '\'') {
        in_string = true;
        quote = c;
        body += c;
        continue;
      }
      if (c == '#') break;
      body += c;
    }
    body = trim(body);
    if (body.empty()) {
      pending.clear();
      continue;
    }
    // multi-line arrays: keep accumulating until brackets balance
    int depth = 0;
    for (char c : body)
      depth += c == '[' ? 1 : c == ']' ? -1 : 0;
    if (depth > 0) {
      pending = body + " ";
      continue;
    }
    pending.clear();

    const std::size_t eq = body.find('=');
    detail::require(eq != std::string::npos,
                    "config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    detail::require(!key.empty(), "config line " + std::to_string(lineno) +
                                      ": empty key");
    Cursor cursor(body.substr(eq + 1));
    file.values_[key] = cursor.parse_value();
  }
  detail::require(pending.empty(), "config: unterminated array at end of file");
  return file;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  detail::require(in.good(), "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

double KeyValueFile::number(const std::string& key) const {
  const auto it = values_.find(key);
  detail::require(it != values_.end(), "config: missing key '" + key + "'");
  detail::require(it->second.kind == Value::Kind::number,
                  "config: key '" + key + "' is not a number");
  return it->second.number;
}

double KeyValueFile::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::int64_t KeyValueFile::integer_or(const std::string& key,
                                      std::int64_t fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  const auto r = static_cast<std::int64_t>(v);
  detail::require(static_cast<double>(r) == v,
                  "config: key '" + key + "' must be an integer");
  return r;
}

std::string KeyValueFile::string_or(const std::string& key,
                                    const std::string& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  detail::require(it->second.kind == Value::Kind::string,
                  "config: key '" + key + "' is not a string");
  return it->second.text;
}

std::vector<double> KeyValueFile::number_list(const std::string& key) const {
  const auto it = values_.find(key);
  detail::require(it != values_.end(), "config: missing key '" + key + "'");
  detail::require(it->second.kind == Value::Kind::array,
                  "config: key '" + key + "' is not an array");
  std::vector<double> out;
  for (const auto& item : it->second.items) {
    detail::require(item.kind == Value::Kind::number,
                    "config: key '" + key + "' must hold numbers");
    out.push_back(item.number);
  }
  return out;
}

std::vector<std::vector<double>> KeyValueFile::point_list(
    const std::string& key) const {
  const auto it = values_.find(key);
  detail::require(it != values_.end(), "config: missing key '" + key + "'");
  detail::require(it->second.kind == Value::Kind::array,
                  "config: key '" + key + "' is not an array");
  std::vector<std::vector<double>> out;
  for (const auto& item : it->second.items) {
    detail::require(item.kind == Value::Kind::array,
                    "config: key '" + key + "' must hold point arrays");
    std::vector<double> point;
    for (const auto& coord : item.items) {
      detail::require(coord.kind == Value::Kind::number,
                      "config: point coordinates must be numbers");
      point.push_back(coord.number);
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<std::string> KeyValueFile::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "fermion_mass",       "boson_mass",
    "kappa",              "fermion_shells",
    "fermion_shell_weights", "boson_shells",
    "boson_shell_weights", "boson_n_max",
    "fermion_n_max",      "spatial_points",
    "spatial_weights",    "chi_spatial",
    "cutoff_dirac",       "cutoff_dirac_lambda",
    "cutoff_dirac_amplitude", "cutoff_kg",
    "cutoff_kg_lambda",   "cutoff_kg_amplitude",
    "chi_spatial_width",  "chi_spatial_amplitude",
    "solver_tol",         "seed",
    "refine_fermion_shells", "refine_boson_shells",
};

yukawa::YukawaConfig model_from_kv(const KeyValueFile& kv) {
  for (const auto& key : kv.keys())
    detail::require(kKnownKeys.count(key) > 0,
                    "config: unknown key '" + key + "'");

  yukawa::YukawaConfig cfg;
  cfg.fermion_mass = kv.number("fermion_mass");
  cfg.boson_mass = kv.number("boson_mass");
  cfg.kappa = kv.number_or("kappa", 0.0);

  const auto fshells = kv.number_list("fermion_shells");
  const auto fweights = kv.has("fermion_shell_weights")
                            ? kv.number_list("fermion_shell_weights")
                            : std::vector<double>{};
  cfg.fermion_grid = yukawa::grid_from_shells(fshells, fweights);

  const auto bshells = kv.number_list("boson_shells");
  const auto bweights = kv.has("boson_shell_weights")
                            ? kv.number_list("boson_shell_weights")
                            : std::vector<double>{};
  cfg.boson_grid = yukawa::grid_from_shells(bshells, bweights);

  cfg.boson_n_max = static_cast<int>(kv.integer_or("boson_n_max", 2));
  cfg.fermion_occupation_cap =
      static_cast<int>(kv.integer_or("fermion_n_max", 0));

  cfg.cutoff_dirac = yukawa::CutoffProfile::parse(
      kv.string_or("cutoff_dirac", "sharp"),
      kv.number_or("cutoff_dirac_lambda", 1.0),
      kv.number_or("cutoff_dirac_amplitude", 1.0));
  cfg.cutoff_kg = yukawa::CutoffProfile::parse(
      kv.string_or("cutoff_kg", "sharp"), kv.number_or("cutoff_kg_lambda", 1.0),
      kv.number_or("cutoff_kg_amplitude", 1.0));

  const auto points = kv.point_list("spatial_points");
  const auto weights = kv.number_list("spatial_weights");
  detail::require(points.size() == weights.size(),
                  "config: spatial_points/spatial_weights length mismatch");
  const std::string chi_kind = kv.string_or("chi_spatial", "gaussian");
  const double chi_width = kv.number_or("chi_spatial_width", 1.0);
  const double chi_amp = kv.number_or("chi_spatial_amplitude", 1.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    detail::require(points[i].size() == 3,
                    "config: spatial points need three coordinates");
    const yukawa::Vector3 x(points[i][0], points[i][1], points[i][2]);
    cfg.spatial.points.push_back(x);
    cfg.spatial.weights.push_back(weights[i]);
    double chi = chi_amp;
    if (chi_kind == "gaussian")
      chi = chi_amp * std::exp(-x.squaredNorm() / (chi_width * chi_width));
    else
      detail::require(chi_kind == "uniform",
                      "config: chi_spatial must be 'gaussian' or 'uniform'");
    cfg.spatial.chi.push_back(chi);
  }

  cfg.solver_tol = kv.number_or("solver_tol", 1e-11);
  cfg.seed = static_cast<std::uint64_t>(kv.integer_or("seed", 42));
  cfg.validate();
  return cfg;
}

std::vector<yukawa::YukawaConfig> levels_from_kv(const KeyValueFile& kv,
                                                 int levels) {
  detail::require(levels >= 1, "refinement needs at least one level");
  const yukawa::YukawaConfig base = model_from_kv(kv);
  const auto refine_f = kv.has("refine_fermion_shells")
                            ? kv.number_list("refine_fermion_shells")
                            : std::vector<double>{};
  const auto refine_b = kv.has("refine_boson_shells")
                            ? kv.number_list("refine_boson_shells")
                            : std::vector<double>{};
  const int max_levels =
      1 + static_cast<int>(std::max(refine_f.size(), refine_b.size()));
  detail::require(levels <= max_levels,
                  "config provides only " + std::to_string(max_levels) +
                      " refinement levels");

  auto fshells = kv.number_list("fermion_shells");
  auto bshells = kv.number_list("boson_shells");
  std::vector<yukawa::YukawaConfig> out;
  out.push_back(base);
  for (int lvl = 1; lvl < levels; ++lvl) {
    yukawa::YukawaConfig cfg = base;
    if (lvl - 1 < static_cast<int>(refine_f.size()))
      fshells.push_back(refine_f[lvl - 1]);
    if (lvl - 1 < static_cast<int>(refine_b.size()))
      bshells.push_back(refine_b[lvl - 1]);
    cfg.fermion_grid = yukawa::grid_from_shells(fshells);
    cfg.boson_grid = yukawa::grid_from_shells(bshells);
    cfg.validate();
    out.push_back(std::move(cfg));
  }
  return out;
}

}  // namespace

yukawa::YukawaConfig model_from_file(const std::string& path) {
  return model_from_kv(KeyValueFile::load(path));
}

yukawa::YukawaConfig model_from_text(const std::string& text) {
  return model_from_kv(KeyValueFile::parse(text));
}

std::vector<yukawa::YukawaConfig> refinement_levels_from_file(
    const std::string& path, int levels) {
  return levels_from_kv(KeyValueFile::load(path), levels);
}

std::vector<yukawa::YukawaConfig> refinement_levels_from_text(
    const std::string& text, int levels) {
  return levels_from_kv(KeyValueFile::parse(text), levels);
}

std::string tiny_config_text(double kappa) {
  std::ostringstream out;
  out << "# desk-scale Yukawa instance: every identity dense-verifiable\n"
      << "fermion_mass = 1.0\n"
      << "boson_mass = 0.75\n"
      << "kappa = " << kappa << "\n"
      << "fermion_shells = [0.5]\n"
      << "boson_shells = [0.5]\n"
      << "boson_n_max = 3\n"
      << "cutoff_dirac = \"sharp\"\n"
      << "cutoff_dirac_lambda = 1.0\n"
      << "cutoff_kg = \"sharp\"\n"
      << "cutoff_kg_lambda = 1.0\n"
      << "spatial_points = [[0, 0, 0], [0, 0, 0.4], [0, 0, -0.4]]\n"
      << "spatial_weights = [0.5, 0.25, 0.25]\n"
      << "chi_spatial = \"gaussian\"\n"
      << "seed = 42\n";
  return out.str();
}

std::string hvz_config_text(double kappa) {
  std::ostringstream out;
  out << "# nested refinement tower for the essential-spectrum gap probe\n"
      << "fermion_mass = 1.0\n"
      << "boson_mass = 0.75\n"
      << "kappa = " << kappa << "\n"
      << "fermion_shells = [0.0, 0.8]\n"
      << "boson_shells = [0.0, 1.0]\n"
      << "refine_fermion_shells = [0.4, 0.2]\n"
      << "refine_boson_shells = [0.5, 0.25]\n"
      << "boson_n_max = 2\n"
      << "fermion_n_max = 3\n"
      << "cutoff_dirac = \"sharp\"\n"
      << "cutoff_dirac_lambda = 0.1\n"
      << "cutoff_kg = \"sharp\"\n"
      << "cutoff_kg_lambda = 0.1\n"
      << "spatial_points = [[0, 0, 0]]\n"
      << "spatial_weights = [1.0]\n"
      << "chi_spatial = \"uniform\"\n"
      << "seed = 42\n";
  return out.str();
}

}  // namespace fockbench::config

#include "rootsim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "parse_util.hpp"
#include "rootsim/errors.hpp"

namespace rootsim {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string results_csv(const ExperimentResult& result) {
  const auto& cfg = result.config;
  std::ostringstream os;
  os << kResultsCsvHeader << '\n';
  for (const auto& r : result.rows) {
    os << to_string(cfg.experiment) << ',' << cfg.dist << ',' << cfg.phi << ',' << r.n << ','
       << format_double(r.param) << ',' << r.trials << ',' << r.hits << ','
       << format_double(r.p_hat) << ',' << format_double(r.ci_lo) << ','
       << format_double(r.ci_hi) << ',' << cfg.base_seed << ',' << (r.prime_n ? 1 : 0) << '\n';
  }
  return os.str();
}

namespace {

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string summary_json(const ExperimentResult& result, const std::string& pilot_json) {
  using nlohmann::json;
  const auto& cfg = result.config;
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["dist"] = cfg.dist;
  j["phi"] = cfg.phi;
  j["n_list"] = cfg.n_list;
  j["param_grid"] = cfg.param_grid;
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  j["x"] = cfg.x;
  json rows = json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"n", r.n},
                    {"param", r.param},
                    {"hits", r.hits},
                    {"trials", r.trials},
                    {"p_hat", r.p_hat},
                    {"ci_lo", r.ci_lo},
                    {"ci_hi", r.ci_hi},
                    {"prime_n", r.prime_n}});
  j["rows"] = rows;
  json extras = json::object();
  for (const auto& [k, v] : result.extras) extras[k] = json_number(v);
  j["extras"] = extras;
  j["pilot_thresholds"] = pilot_json.empty() ? json(nullptr) : json::parse(pilot_json);
  return j.dump(2) + "\n";
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto item = detail::trim(text.substr(start, end == std::string_view::npos ? text.npos : end - start));
    if (!item.empty()) {
      auto v = detail::parse_double(item);
      if (!v) throw ConfigError("not a number: '" + std::string(item) + "'");
      out.push_back(*v);
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(text)) {
    if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError("not a nonnegative integer in list");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  v = detail::trim(v);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool have_experiment = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (auto hash = l.find('#'); hash != l.npos) l = l.substr(0, hash);
    l = detail::trim(l);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == l.npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const auto k = detail::trim(l.substr(0, eq));
    const auto v = detail::trim(l.substr(eq + 1));
    if (k == "experiment") {
      cfg.experiment = parse_experiment(v);
      have_experiment = true;
    } else if (k == "dist") {
      cfg.dist = std::string(v);
    } else if (k == "phi") {
      cfg.phi = std::string(v);
    } else if (k == "n_list") {
      cfg.n_list = parse_size_list(v);
    } else if (k == "param_grid") {
      cfg.param_grid = parse_double_list(v);
    } else if (k == "trials") {
      cfg.trials = parse_u64(k, v);
    } else if (k == "base_seed") {
      cfg.base_seed = parse_u64(k, v);
    } else if (k == "threads") {
      cfg.threads = static_cast<int>(parse_u64(k, v));
    } else if (k == "x") {
      auto x = detail::parse_double(v);
      if (!x) throw ConfigError("invalid value for x");
      cfg.x = *x;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + std::string(k) + "'");
    }
  }
  if (!have_experiment) throw ConfigError("config is missing 'experiment'");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment=" << to_string(cfg.experiment) << '\n'
     << "dist=" << cfg.dist << '\n'
     << "phi=" << cfg.phi << '\n'
     << "n_list=";
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) os << (i ? "," : "") << cfg.n_list[i];
  os << "\nparam_grid=";
  for (std::size_t i = 0; i < cfg.param_grid.size(); ++i)
    os << (i ? "," : "") << format_double(cfg.param_grid[i]);
  os << "\ntrials=" << cfg.trials << "\nbase_seed=" << cfg.base_seed
     << "\nthreads=" << cfg.threads << "\nx=" << format_double(cfg.x) << '\n';
  return os.str();
}

std::string roots_csv(const RootSet& rs) {
  std::ostringstream os;
  os << "re,im,abs_minus_1,arg\n";
  for (const auto& r : rs.roots)
    os << format_double(r.real()) << ',' << format_double(r.imag()) << ','
       << format_double(std::abs(r) - 1.0) << ',' << format_double(arg_2pi(r)) << '\n';
  return os.str();
}

std::string annulus_stats_json(const AnnulusStats& st) {
  nlohmann::json j;
  j["n"] = st.n;
  nlohmann::json fw = nlohmann::json::array();
  for (const auto& [w, f] : st.frac_within) fw.push_back({{"width", w}, {"fraction", f}});
  j["frac_within"] = fw;
  j["min_scaled_dist"] = st.min_scaled_dist;
  j["ks_uniform"] = st.ks_uniform;
  return j.dump(2) + "\n";
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << content;
}

}  // namespace rootsim

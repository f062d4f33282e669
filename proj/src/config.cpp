#include "ff/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ff {

std::string Section::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

double Section::get_double(const std::string& key) const {
  try {
    std::size_t pos = 0;
    double v = std::stod(get(key), &pos);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("key '" + key + "' is not a number");
  }
}

int Section::get_int(const std::string& key) const {
  return static_cast<int>(get_double(key));
}

std::uint64_t Section::get_u64(const std::string& key) const {
  try {
    return std::stoull(get(key));
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("key '" + key + "' is not an unsigned integer");
  }
}

std::vector<double> Section::get_doubles(const std::string& key) const {
  std::istringstream is(get(key));
  std::vector<double> out;
  double v;
  while (is >> v) out.push_back(v);
  if (out.empty()) throw ConfigError("key '" + key + "' holds no numbers");
  return out;
}

std::vector<int> Section::get_ints(const std::string& key) const {
  auto ds = get_doubles(key);
  std::vector<int> out(ds.size());
  std::transform(ds.begin(), ds.end(), out.begin(),
                 [](double d) { return static_cast<int>(d); });
  return out;
}

std::map<std::string, Section> parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, Section> sections;
  std::string line, current;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": malformed section header");
      current = trim(line.substr(1, line.size() - 2));
      sections[current];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || current.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value' inside a section");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    sections[current].kv_[key] = val;
  }
  return sections;
}

TestFunction parse_test_function(const std::string& spec) {
  std::istringstream is(spec);
  std::string kind;
  is >> kind;
  if (kind == "poly") {
    std::vector<double> c;
    double v;
    while (is >> v) c.push_back(v);
    return TestFunction::polynomial(c);
  }
  if (kind == "bump") {
    double amp, center, width;
    if (!(is >> amp >> center >> width))
      throw ConfigError("bump needs: amp center width");
    return TestFunction::gaussian_bump(amp, center, width);
  }
  if (kind == "wpoly") {
    std::vector<double> c;
    std::string tok;
    bool bar = false;
    std::vector<double> win;
    while (is >> tok) {
      if (tok == "|") {
        bar = true;
        continue;
      }
      (bar ? win : c).push_back(std::stod(tok));
    }
    if (!bar || win.size() != 2)
      throw ConfigError("wpoly needs: coeffs... | plateau support");
    return TestFunction::windowed_polynomial(c, win[0], win[1]);
  }
  throw ConfigError("unknown test function kind '" + kind + "'");
}

namespace {

const Section& need(const std::map<std::string, Section>& m,
                    const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw ConfigError("missing [" + name + "] section");
  return it->second;
}

Potential make_potential(const Section& s) {
  std::string kind = s.get("kind");
  if (kind == "harmonic") return Potential::harmonic();
  if (kind == "double_well") return Potential::double_well();
  if (kind == "quartic") return Potential::quartic();
  if (kind == "custom_polynomial")
    return Potential::polynomial(s.get_doubles("coefficients"));
  throw ConfigError("unknown potential kind '" + kind + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
  auto sections = parse_ini(path);
  ExperimentConfig cfg;

  cfg.name = need(sections, "experiment").get("name");
  const Section& pot = need(sections, "potential");
  cfg.potential = make_potential(pot);
  cfg.potential_kind = pot.get("kind");

  const Section& dom = need(sections, "domain");
  cfg.x_min = dom.get_double("x_min");
  cfg.x_max = dom.get_double("x_max");
  if (!(cfg.x_min < cfg.x_max)) throw ConfigError("[domain]: x_min >= x_max");

  const Section& sp = need(sections, "spectral");
  cfg.mu = sp.get_double("mu");
  cfg.mu_max = sp.get_double("mu_max");
  if (sp.has("lambda_cap_margin"))
    cfg.lambda_cap_margin = sp.get_double("lambda_cap_margin");
  if (cfg.mu_max < cfg.mu) throw ConfigError("[spectral]: mu_max < mu");

  const Section& sw = need(sections, "sweep");
  cfg.hbar_list = sw.get_doubles("hbar_list");
  for (std::size_t i = 1; i < cfg.hbar_list.size(); ++i)
    if (!(cfg.hbar_list[i] < cfg.hbar_list[i - 1]))
      throw ConfigError("[sweep]: hbar_list must be strictly decreasing");
  cfg.n_list = sw.get_ints("n_list");
  if (cfg.n_list.size() == 1)
    cfg.n_list.assign(cfg.hbar_list.size(), cfg.n_list[0]);
  if (cfg.n_list.size() != cfg.hbar_list.size())
    throw ConfigError("[sweep]: n_list must match hbar_list (or be a single "
                      "value)");
  for (int n : cfg.n_list)
    if (n < 16) throw ConfigError("[sweep]: grid sizes must be >= 16");

  const Section& tf = need(sections, "test_functions");
  cfg.f_variance = parse_test_function(tf.get("variance"));
  cfg.f_clt = parse_test_function(tf.get("clt"));
  cfg.f_cumulant = parse_test_function(tf.get("cumulant"));

  if (auto it = sections.find("spectrum"); it != sections.end()) {
    ExperimentConfig::Spectrum s;
    s.hbar = it->second.get_double("hbar");
    s.x_min = it->second.get_double("x_min");
    s.x_max = it->second.get_double("x_max");
    s.n = it->second.get_int("n");
    s.levels = it->second.get_int("levels");
    cfg.spectrum = s;
  }
  if (auto it = sections.find("sampler"); it != sections.end()) {
    ExperimentConfig::Sampler s;
    s.seed = it->second.get_u64("seed");
    s.n_samples = it->second.get_int("n_samples");
    s.hbar = it->second.get_double("hbar");
    s.n = it->second.get_int("n");
    s.counting_hbar = it->second.get_double("counting_hbar");
    s.counting_n = it->second.get_int("counting_n");
    s.counting_samples = it->second.get_int("counting_samples");
    s.probes = it->second.get_doubles("probes");
    cfg.sampler = s;
  }
  if (auto it = sections.find("toeplitz"); it != sections.end()) {
    ExperimentConfig::Toeplitz t;
    t.band = it->second.get_int("band");
    t.hbar_list = it->second.get_doubles("hbar_list");
    t.n_list = it->second.get_ints("n_list");
    if (t.n_list.size() != t.hbar_list.size())
      throw ConfigError("[toeplitz]: n_list must match hbar_list");
    cfg.toeplitz = t;
  }
  if (auto it = sections.find("multicut"); it != sections.end()) {
    ExperimentConfig::Multicut m;
    m.eps = it->second.get_double("eps");
    m.draws = it->second.get_int("draws");
    if (it->second.has("eta")) m.eta = it->second.get_double("eta");
    m.n = it->second.get_int("n");
    if (it->second.has("ell")) m.ell = it->second.get_int("ell");
    m.scan_hbar_list = it->second.get_doubles("scan_hbar_list");
    m.decomp_hbar = it->second.get_double("decomp_hbar");
    m.sweep_hbar_list = it->second.get_doubles("sweep_hbar_list");
    cfg.multicut = m;
  }
  if (auto it = sections.find("szego"); it != sections.end())
    cfg.cue_sizes = it->second.get_ints("sizes");
  if (auto it = sections.find("output"); it != sections.end())
    cfg.out_dir = it->second.get("dir");

  return cfg;
}

}  // namespace ff

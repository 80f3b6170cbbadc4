#include "relwave/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "relwave/errors.hpp"

namespace relwave::scenario {

namespace pt = boost::property_tree;

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::closed_free: return "closed-free";
    case Family::gauss_free: return "gauss-free";
    case Family::uniform_field: return "uniform-field";
  }
  return "?";
}

const char* output_name(Output o) noexcept {
  switch (o) {
    case Output::density: return "density";
    case Output::metrics: return "metrics";
    case Output::spectrum: return "spectrum";
    case Output::phase: return "phase";
    case Output::widths: return "widths";
  }
  return "?";
}

const char* normalization_name(Normalization n) noexcept {
  switch (n) {
    case Normalization::unit_charge: return "unit-charge";
    case Normalization::unit_norm: return "unit-norm";
    case Normalization::peak_normalized: return "peak-normalized";
  }
  return "?";
}

bool Scenario::wants(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

namespace {

// Line numbers of `[section]` headers and `key =` lines, for diagnostics.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    int n = 0;
    const std::regex header(R"(^\s*\[([^\]]+)\]\s*$)");
    const std::regex key(R"(^\s*([^=;#\s]+)\s*=)");
    std::smatch m;
    while (std::getline(in, line)) {
      ++n;
      if (std::regex_search(line, m, header)) {
        section = m[1];
        lines_[section] = n;
      } else if (std::regex_search(line, m, key)) {
        lines_[section + "." + std::string(m[1])] = n;
      }
    }
  }
  int of(const std::string& section, const std::string& key = {}) const {
    auto it = lines_.find(key.empty() ? section : section + "." + key);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  std::map<std::string, int> lines_;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

class Reader {
 public:
  Reader(const pt::ptree& section, std::string name, const LineIndex& lines)
      : sec_(section), name_(std::move(name)), lines_(lines) {
    for (const auto& kv : sec_) {
      if (!kv.second.empty())
        fail("nested key is not allowed", kv.first);
      values_[kv.first] = kv.second.data();
    }
  }

  [[noreturn]] void fail(const std::string& what, const std::string& key) const {
    const int line = lines_.of(name_, key);
    std::string msg = name_ + "." + key + ": " + what;
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw ConfigError(msg, key, line > 0 ? line : lines_.of(name_));
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& raw(const std::string& key) const { return values_.at(key); }
  const std::map<std::string, std::string>& all() const { return values_; }

  double number(const std::string& token, const std::string& key) const {
    double v = 0.0;
    const char* b = token.data();
    const char* e = b + token.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v))
      fail("'" + token + "' is not a finite number", key);
    return v;
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : split(raw(key))) out.push_back(number(tok, key));
    if (out.empty()) fail("empty list", key);
    return out;
  }

  // Lists may contain `start:stop:step` ranges (inclusive of stop).
  std::vector<double> times(const std::string& key) const {
    std::vector<double> out;
    for (const auto& tok : split(raw(key))) {
      const auto c1 = tok.find(':');
      if (c1 == std::string::npos) {
        out.push_back(number(tok, key));
        continue;
      }
      const auto c2 = tok.find(':', c1 + 1);
      if (c2 == std::string::npos) fail("range must be start:stop:step", key);
      const double a = number(tok.substr(0, c1), key);
      const double b = number(tok.substr(c1 + 1, c2 - c1 - 1), key);
      const double h = number(tok.substr(c2 + 1), key);
      if (!(h > 0.0) || b < a) fail("range needs step > 0 and stop >= start", key);
      const long n = std::lround(std::floor((b - a) / h + 1e-9));
      if (n > 1000000) fail("range has too many points", key);
      for (long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * h);
    }
    return out;
  }

  std::string text(const std::string& key, const std::string& fallback = {}) const {
    return has(key) ? values_.at(key) : fallback;
  }

 private:
  const pt::ptree& sec_;
  std::string name_;
  const LineIndex& lines_;
  std::map<std::string, std::string> values_;
};

const std::vector<std::string> kKnownKeys = {
    "family", "outputs", "normalization", "figure", "description", "labels", "t",
    "theta", "v0", "sigma0", "gamma0", "p0", "x0", "force",
    "x_min", "x_max", "x_count", "p_min", "p_max", "p_count",
    "m", "c", "hbar", "q", "period"};

const std::vector<std::string> kCaseKeys = {
    "theta", "v0", "sigma0", "gamma0", "p0", "x0", "force",
    "x_min", "x_max", "x_count", "p_min", "p_max", "p_count"};

std::string format_label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Scenario parse_one(const std::string& name, const pt::ptree& sec, const LineIndex& lines) {
  const Reader r(sec, name, lines);
  for (const auto& [k, v] : r.all()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end())
      r.fail("unknown key", k);
  }

  Scenario s;
  s.name = name;
  s.echo = r.all();
  s.figure = r.text("figure");
  s.description = r.text("description");

  if (!r.has("family")) r.fail("missing family", "family");
  const std::string fam = r.raw("family");
  if (fam == "closed-free") s.family = Family::closed_free;
  else if (fam == "gauss-free") s.family = Family::gauss_free;
  else if (fam == "uniform-field") s.family = Family::uniform_field;
  else r.fail("family must be closed-free, gauss-free or uniform-field", "family");

  if (!r.has("outputs")) r.fail("missing outputs", "outputs");
  for (const auto& tok : split(r.raw("outputs"))) {
    Output o;
    if (tok == "density") o = Output::density;
    else if (tok == "metrics") o = Output::metrics;
    else if (tok == "spectrum") o = Output::spectrum;
    else if (tok == "phase") o = Output::phase;
    else if (tok == "widths") o = Output::widths;
    else r.fail("unknown output '" + tok + "'", "outputs");
    if (!s.wants(o)) s.outputs.push_back(o);
  }

  const std::string norm = r.text("normalization", "unit-norm");
  if (norm == "unit-charge") s.normalization = Normalization::unit_charge;
  else if (norm == "unit-norm") s.normalization = Normalization::unit_norm;
  else if (norm == "peak-normalized") s.normalization = Normalization::peak_normalized;
  else r.fail("normalization must be unit-charge, unit-norm or peak-normalized", "normalization");

  if (!r.has("t")) r.fail("missing t list", "t");
  s.ts = r.times("t");
  if (s.ts.empty()) r.fail("t list is empty", "t");

  const auto scalar = [&](const std::string& key, double fallback) {
    if (!r.has(key)) return fallback;
    const auto v = r.numbers(key);
    if (v.size() != 1) r.fail("expects a single value", key);
    return v[0];
  };
  s.params.m = scalar("m", 1.0);
  s.params.c = scalar("c", 1.0);
  s.params.hbar = scalar("hbar", 1.0);
  s.params.q = scalar("q", 1.0);
  s.period = scalar("period", 256.0);

  // Zip the per-case lists.
  std::map<std::string, std::vector<double>> lists;
  std::size_t n = 1;
  for (const auto& k : kCaseKeys) {
    if (!r.has(k)) continue;
    lists[k] = r.numbers(k);
    n = std::max(n, lists[k].size());
  }
  for (const auto& [k, v] : lists)
    if (v.size() != 1 && v.size() != n)
      r.fail("list length " + std::to_string(v.size()) + " does not match " +
                 std::to_string(n) + " cases",
             k);
  std::vector<std::string> labels;
  if (r.has("labels")) {
    labels = split(r.raw("labels"));
    if (labels.size() != n) r.fail("needs one label per case", "labels");
  }
  const auto get = [&](const std::string& k, std::size_t i, double fallback) {
    auto it = lists.find(k);
    if (it == lists.end()) return fallback;
    return it->second.size() == 1 ? it->second[0] : it->second[i];
  };
  const auto need = [&](const std::string& k) {
    if (!lists.count(k)) r.fail("required for family " + fam, k);
  };
  const auto count = [&](const std::string& k, std::size_t i) -> std::size_t {
    const double v = get(k, i, 0.0);
    if (v < 0.0 || v != std::floor(v)) r.fail("must be a non-negative integer", k);
    return static_cast<std::size_t>(v);
  };

  need("x_min");
  need("x_max");
  need("x_count");
  if (s.family == Family::closed_free) {
    need("theta");
    need("v0");
  } else {
    need("sigma0");
    if (!lists.count("gamma0") && !lists.count("p0"))
      r.fail("one of gamma0 or p0 is required", "gamma0");
    if (lists.count("gamma0") && lists.count("p0"))
      r.fail("give gamma0 or p0, not both", "p0");
    if (s.family == Family::uniform_field) need("force");
  }
  if (s.wants(Output::spectrum)) {
    need("p_min");
    need("p_max");
    need("p_count");
  }

  for (std::size_t i = 0; i < n; ++i) {
    Case c;
    c.theta = get("theta", i, 0.0);
    c.v0 = get("v0", i, 0.0);
    c.sigma0 = get("sigma0", i, 0.0);
    c.x0 = get("x0", i, 0.0);
    c.force = get("force", i, 0.0);
    if (lists.count("gamma0")) {
      const double g = get("gamma0", i, 1.0);
      if (!(g >= 1.0)) r.fail("gamma0 must be at least 1", "gamma0");
      c.p0 = s.params.m * s.params.c * std::sqrt(g * g - 1.0);
    } else {
      c.p0 = get("p0", i, 0.0);
    }
    c.x_min = get("x_min", i, 0.0);
    c.x_max = get("x_max", i, 0.0);
    c.x_count = count("x_count", i);
    c.p_min = get("p_min", i, 0.0);
    c.p_max = get("p_max", i, 0.0);
    c.p_count = count("p_count", i);
    if (!labels.empty()) {
      c.label = labels[i];
    } else if (s.family == Family::closed_free) {
      c.label = "ctheta" + format_label(c.theta * s.params.c);
    } else {
      c.label = "sigma" + format_label(c.sigma0) + "_p" + format_label(c.p0);
    }
    s.cases.push_back(c);
  }

  try {
    s.validate();
  } catch (const ConfigError& e) {
    const std::string f = e.field();
    const auto dot = f.rfind('.');
    r.fail(e.what(), dot == std::string::npos ? f : f.substr(dot + 1));
  }
  return s;
}

}  // namespace

void Scenario::validate() const {
  const auto bad = [&](const std::string& what, const std::string& key) {
    throw ConfigError(what, name + "." + key);
  };
  if (ts.empty()) bad("t list is empty", "t");
  if (outputs.empty()) bad("no outputs requested", "outputs");
  if (cases.empty()) bad("no cases", "x_count");
  try {
    params.validate();
  } catch (const DomainError& e) {
    bad(e.what(), "m");
  }
  if (!(period > 0.0)) bad("period must be positive", "period");
  if (family == Family::uniform_field && (params.c != 1.0 || params.hbar != 1.0))
    bad("uniform-field scenarios use c = hbar = 1", "c");
  for (const auto& c : cases) {
    if (c.x_count < 64) bad("x_count must be at least 64", "x_count");
    if (!(c.x_max > c.x_min)) bad("x_max must exceed x_min", "x_max");
    if (wants(Output::spectrum)) {
      if (c.p_count < 2) bad("p_count must be at least 2", "p_count");
      if (!(c.p_max > c.p_min)) bad("p_max must exceed p_min", "p_max");
    }
    switch (family) {
      case Family::closed_free:
        if (!(c.theta > 0.0)) bad("theta must be positive", "theta");
        if (!(std::fabs(c.v0) < params.c)) bad("|v0| must be below c", "v0");
        break;
      case Family::uniform_field:
        if (c.force == 0.0) bad("force must be nonzero", "force");
        [[fallthrough]];
      case Family::gauss_free:
        if (!(c.sigma0 > 0.0)) bad("sigma0 must be positive", "sigma0");
        break;
    }
  }
}

std::vector<Scenario> parse_scenarios(const std::string& text, const std::string& source) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message(), {},
                      static_cast<int>(e.line()));
  }
  const LineIndex lines(text);
  std::vector<Scenario> out;
  for (const auto& kv : tree) {
    if (kv.second.empty())
      throw ConfigError(source + ": key '" + kv.first + "' outside any [scenario] section",
                        kv.first, lines.of("", kv.first));
    out.push_back(parse_one(kv.first, kv.second, lines));
  }
  if (out.empty()) throw ConfigError(source + ": no scenarios defined");
  return out;
}

std::vector<Scenario> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenarios(ss.str(), path.string());
}

}  // namespace relwave::scenario

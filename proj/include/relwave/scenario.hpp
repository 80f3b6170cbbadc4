#pragma once

// Scenario descriptions, the builtin figure catalog and the runner that
// turns a scenario into CSV files plus a JSON manifest.
//
// Config files are INI. Each section is one scenario; numeric keys hold
// whitespace- or comma-separated lists that are zipped into cases (a
// single value is broadcast). Times accept `start:stop:step` ranges.
//
//   [fig1]
//   family = closed-free
//   outputs = density
//   normalization = unit-charge
//   theta = 100 10 1 0.1
//   v0 = 0.25
//   x_min = -100 -60 -60 -40
//   x_max = 100 60 60 40
//   x_count = 8001 6001 6001 16001
//   t = 0 10 20

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "relwave/kinematics.hpp"

namespace relwave::scenario {

enum class Family { closed_free, gauss_free, uniform_field };
enum class Output { density, metrics, spectrum, phase, widths };
enum class Normalization { unit_charge, unit_norm, peak_normalized };

const char* family_name(Family f) noexcept;
const char* output_name(Output o) noexcept;
const char* normalization_name(Normalization n) noexcept;

struct Case {
  std::string label;
  double theta = 0.0;   // closed-free
  double v0 = 0.0;      // closed-free
  double sigma0 = 0.0;  // gauss-free, uniform-field
  double p0 = 0.0;      // from p0 or gamma0
  double x0 = 0.0;
  double force = 0.0;   // uniform-field
  double x_min = 0.0, x_max = 0.0;
  std::size_t x_count = 0;
  double p_min = 0.0, p_max = 0.0;
  std::size_t p_count = 0;
};

struct Scenario {
  std::string name;
  std::string figure;
  std::string description;
  Family family = Family::closed_free;
  std::vector<Output> outputs;
  Normalization normalization = Normalization::unit_norm;
  std::vector<double> ts;
  std::vector<Case> cases;
  PhysParams params{};
  double period = 256.0;  // x-period of mode sums (gauss-free, uniform-field)
  std::map<std::string, std::string> echo;  // raw key/value pairs as read

  bool wants(Output o) const;
  void validate() const;  // throws ConfigError
};

// Parses INI text; `source` names the origin in diagnostics.
std::vector<Scenario> parse_scenarios(const std::string& text,
                                      const std::string& source = "<config>");
std::vector<Scenario> load_config(const std::filesystem::path& path);

struct CatalogEntry {
  std::string name;     // fig1 ... fig9
  std::string figure;   // figure the entry reproduces
  std::string summary;  // parameter set in words
  std::vector<std::string> scenarios;  // scenario names run by this entry
};

const std::vector<CatalogEntry>& catalog();
// INI text of every builtin scenario.
const std::string& builtin_config();
// Scenarios for an entry or single scenario name; throws ConfigError
// listing the catalog when nothing matches.
std::vector<Scenario> builtin(const std::string& name);

struct Flag {
  std::string case_label;
  double t = 0.0;
  std::string kind;
  std::string detail;
};

struct OutputFile {
  std::string path;
  std::string kind;
  std::string case_label;
  std::string sha256;
  std::size_t rows = 0;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 1;
};

struct RunManifest {
  std::string scenario;
  std::string version;
  std::map<std::string, std::string> echo;
  std::vector<std::string> quadrature;
  std::vector<Flag> flags;
  std::vector<std::string> errors;  // numeric failures; outputs kept
  std::vector<OutputFile> outputs;
  double wall_seconds = 0.0;
  std::filesystem::path manifest_path;

  bool ok() const noexcept { return errors.empty(); }
};

// Runs one scenario, writing `<name>_<case>_<output>.csv` and
// `<name>_manifest.json` to options.out_dir.
RunManifest run(const Scenario& scenario, const RunOptions& options);

std::string sha256_file(const std::filesystem::path& path);
const char* version() noexcept;

}  // namespace relwave::scenario

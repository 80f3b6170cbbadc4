#include <algorithm>

#include "relwave/errors.hpp"
#include "relwave/scenario.hpp"

namespace relwave::scenario {

namespace {

const char* const kBuiltin = R"INI(
; Natural units m = c = hbar = q = 1 throughout.

[fig1]
figure = Fig. 1
description = closed-form packets, charge density at t = 0, 10, 20
family = closed-free
outputs = density
normalization = unit-charge
theta = 100 10 1 0.1
v0 = 0.25
x_min = -100 -60 -60 -40
x_max = 100 60 60 40
x_count = 8001 6001 6001 16001
t = 0 10 20

[fig2]
figure = Fig. 2
description = closed-form packets, Gaussianity scores and best-fit half-widths
family = closed-free
outputs = metrics widths
normalization = unit-charge
theta = 100 10 1 0.1
v0 = 0.25
x_min = -100 -60 -60 -40
x_max = 100 60 60 40
x_count = 8001 6001 6001 16001
t = 0:20:1

[fig3]
figure = Fig. 3 (left)
description = closed-form packets, momentum spectra normalized to 1 at the peak
family = closed-free
outputs = spectrum
normalization = peak-normalized
theta = 100 10 1 0.1
v0 = 0.25
x_min = -100 -60 -60 -40
x_max = 100 60 60 40
x_count = 8001 6001 6001 16001
p_min = -6
p_max = 6
p_count = 1201
t = 0

[fig4]
figure = Fig. 4
description = free Gaussian packets, charge density at t = 0, 4, 8, 12, 16
family = gauss-free
outputs = density
normalization = unit-norm
labels = s3_g1 s3_g10 s0.3_g10 s0.3_g1
sigma0 = 3 3 0.3 0.3
gamma0 = 1 10 10 1
x0 = 0
x_min = -30
x_max = 50
x_count = 16001
t = 0 4 8 12 16

[fig5]
figure = Fig. 5
description = free Gaussian packets, Gaussianity scores and best-fit half-widths
family = gauss-free
outputs = metrics widths
normalization = unit-norm
labels = s3_g1 s3_g10 s0.3_g10 s0.3_g1
sigma0 = 3 3 0.3 0.3
gamma0 = 1 10 10 1
x0 = 0
x_min = -30
x_max = 50
x_count = 16001
t = 0:16:0.5

[fig6]
figure = Fig. 3 (right)
description = free Gaussian spectra at t = 0 normalized to 1 at the peak; suppression of p < -mc
family = gauss-free
outputs = spectrum
normalization = peak-normalized
labels = s0.3_g10 s3_g1 s0.3_g1
sigma0 = 0.3 3 0.3
gamma0 = 10 1 1
x0 = 0
x_min = -30
x_max = 30
x_count = 12001
p_min = -6
p_max = 16
p_count = 2201
t = 0

[fig7]
figure = Fig. 6 (density panels)
description = uniform field F = 0.1, charge density from t = -12 to 40
family = uniform-field
outputs = density
normalization = unit-norm
labels = s3_g1 s0.3_g1 s0.3_g10
sigma0 = 3 0.3 0.3
gamma0 = 1 1 10
x0 = 10
force = 0.1
x_min = -60
x_max = 110
x_count = 17001
t = -12:40:4

[fig7-lowerleft]
figure = Fig. 6 (lower-left)
description = uniform field F = 0.1, mode spectra |psi_p(t)|^2 normalized to 1 at the t = 0 peak
family = uniform-field
outputs = spectrum
normalization = peak-normalized
labels = s3_g1 s0.3_g1 s0.3_g10
sigma0 = 3 0.3 0.3
gamma0 = 1 1 10
x0 = 10
force = 0.1
x_min = -60
x_max = 110
x_count = 17001
p_min = -6
p_max = 16
p_count = 2201
t = 0:40:4

[fig8]
figure = Fig. 7
description = uniform field F = 0.1, Gaussianity of rho and best-fit half-widths
family = uniform-field
outputs = metrics widths
normalization = unit-norm
labels = s3_g1 s0.3_g1 s0.3_g10
sigma0 = 3 0.3 0.3
gamma0 = 1 1 10
x0 = 10
force = 0.1
x_min = -60
x_max = 110
x_count = 17001
t = -12:40:1

[fig9-left]
figure = Fig. 8 (left)
description = closed-form packet c theta = 100, phase along the worldline vs S_cl
family = closed-free
outputs = phase
theta = 100
v0 = 0.25
x_min = -100
x_max = 100
x_count = 801
t = 0:50:0.5

[fig9-middle]
figure = Fig. 8 (middle)
description = free Gaussian (0.3, 10), phase along the worldline vs S_cl
family = gauss-free
outputs = phase
labels = s0.3_g10
sigma0 = 0.3
gamma0 = 10
x0 = 0
x_min = -30
x_max = 60
x_count = 901
t = 0:50:0.5

[fig9-right]
figure = Fig. 8 (right)
description = uniform field (0.3, 10), F = 0.1, phase along the worldline vs S_cl
family = uniform-field
outputs = phase
labels = s0.3_g10
sigma0 = 0.3
gamma0 = 10
x0 = 10
force = 0.1
x_min = -60
x_max = 110
x_count = 1701
t = 0:40:0.5
)INI";

}  // namespace

const std::string& builtin_config() {
  static const std::string text(kBuiltin);
  return text;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"fig1", "Fig. 1", "closed-free, c theta = 100, 10, 1, 0.1, v0 = c/4; rho at t = 0, 10, 20",
       {"fig1"}},
      {"fig2", "Fig. 2", "closed-free, same cases; G_psi, G_rho and widths for t in [0, 20]",
       {"fig2"}},
      {"fig3", "Fig. 3 (left)", "closed-free, same cases; momentum spectra", {"fig3"}},
      {"fig4", "Fig. 4",
       "gauss-free, (sigma0, gamma0) = (3,1), (3,10), (0.3,10), (0.3,1); rho at t = 0..16",
       {"fig4"}},
      {"fig5", "Fig. 5", "gauss-free, same cases; G_psi, G_rho and widths", {"fig5"}},
      {"fig6", "Fig. 3 (right)",
       "gauss-free, (0.3,10), (3,1), (0.3,1); spectra at t = 0 and p < -mc suppression",
       {"fig6"}},
      {"fig7", "Fig. 6",
       "uniform-field F = 0.1, (3,1), (0.3,1), (0.3,10), x0 = 10; rho for t in [-12, 40] "
       "(panel fig7-lowerleft: mode spectra)",
       {"fig7", "fig7-lowerleft"}},
      {"fig8", "Fig. 7", "uniform-field, same cases; G_rho, G_psi and widths", {"fig8"}},
      {"fig9", "Fig. 8",
       "phase along the worldline vs S_cl: closed c theta = 100 (fig9-left), gauss (0.3,10) "
       "(fig9-middle), field (0.3,10) F = 0.1 (fig9-right)",
       {"fig9-left", "fig9-middle", "fig9-right"}},
  };
  return entries;
}

std::vector<Scenario> builtin(const std::string& name) {
  static const std::vector<Scenario> all = parse_scenarios(builtin_config(), "<builtin>");
  std::vector<std::string> wanted;
  for (const auto& e : catalog())
    if (e.name == name) wanted = e.scenarios;
  if (wanted.empty()) wanted.push_back(name);
  std::vector<Scenario> out;
  for (const auto& w : wanted)
    for (const auto& s : all)
      if (s.name == w) out.push_back(s);
  if (out.empty()) {
    std::string msg = "scenario '" + name + "' not found; catalog:";
    for (const auto& e : catalog()) {
      msg += " " + e.name;
      for (const auto& s : e.scenarios)
        if (s != e.name) msg += " " + s;
    }
    throw ConfigError(msg, "scenario");
  }
  return out;
}

}  // namespace relwave::scenario

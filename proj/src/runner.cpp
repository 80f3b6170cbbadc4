#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <nlohmann/json.hpp>

#include "relwave/analysis.hpp"
#include "relwave/errors.hpp"
#include "relwave/field_packets.hpp"
#include "relwave/free_packets.hpp"
#include "relwave/scenario.hpp"
#include "relwave/simd/synthesis.hpp"

namespace relwave::scenario {

const char* version() noexcept { return "0.3.0"; }

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 init failed");
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

namespace {

// One packet behind a common interface.
class Model {
 public:
  virtual ~Model() = default;
  virtual WaveSlice slice(double t, const simd::UniformGrid& g, int threads,
                          std::vector<Flag>& flags) const = 0;
  virtual Complex psi(double t, double x) const = 0;
  virtual double xbar(double t) const = 0;
  virtual double pbar(double t) const = 0;
  virtual double action(double t) const = 0;
  // Spectrum straight from the mode amplitudes, when the family has one.
  virtual std::optional<analysis::MomentumSpectrum> mode_spectrum(double, const Case&) const {
    return std::nullopt;
  }
  virtual void describe(std::vector<std::string>& out) const = 0;
};

class ClosedModel final : public Model {
 public:
  ClosedModel(const Case& c, const PhysParams& pp)
      : label_(c.label), packet_({c.theta, FreeMotion(c.v0, c.x0, pp)}) {}
  WaveSlice slice(double t, const simd::UniformGrid& g, int threads,
                  std::vector<Flag>& flags) const override {
    int flagged = 0;
    WaveSlice w = packet_.slice(t, g, threads, &flagged);
    if (flagged > 0)
      flags.push_back({label_, t, "branch_fallback",
                       fmt::format("{} points evaluated by momentum quadrature", flagged)});
    return w;
  }
  Complex psi(double t, double x) const override { return packet_.psi(t, x).psi; }
  double xbar(double t) const override {
    return free_trajectory(t, packet_.config().motion).x;
  }
  double pbar(double) const override { return packet_.config().motion.p0(); }
  double action(double t) const override { return action_free(t, packet_.config().motion); }
  void describe(std::vector<std::string>& out) const override {
    out.push_back(label_ + ": closed form through K_0, K_1, K_2 (bent-contour trapezoid, "
                           "rel_tol 1e-14); branch fallback by sinh-mapped momentum "
                           "quadrature, rel_tol 1e-12");
  }

 private:
  std::string label_;
  ClosedPacket packet_;
};

class GaussModel final : public Model {
 public:
  GaussModel(const Case& c, const PhysParams& pp, double period)
      : label_(c.label),
        packet_({c.sigma0, c.p0, c.x0, pp}, GaussGridOptions{period, 12.0}),
        motion_(FreeMotion::from_momentum(c.p0, c.x0, pp)) {}
  WaveSlice slice(double t, const simd::UniformGrid& g, int threads,
                  std::vector<Flag>&) const override {
    return packet_.slice(t, g, threads);
  }
  Complex psi(double t, double x) const override { return packet_.at(t, x).psi; }
  double xbar(double t) const override { return free_trajectory(t, motion_).x; }
  double pbar(double) const override { return motion_.p0(); }
  double action(double t) const override { return action_free(t, motion_); }
  void describe(std::vector<std::string>& out) const override {
    const auto& s = packet_.spectral();
    out.push_back(fmt::format(
        "{}: {} plane waves, dp = {:.6g}, period {:.6g}, window 12 hbar/sigma0, "
        "truncated spectral mass {:.3g}",
        label_, s.momenta().size(), s.spacing(), s.period(), packet_.tail_bound()));
  }
  double suppression() const { return packet_.suppression_ratio(); }

 private:
  std::string label_;
  GaussPacket packet_;
  FreeMotion motion_;
};

class FieldModel final : public Model {
 public:
  FieldModel(const Case& c, const PhysParams& pp, double period)
      : label_(c.label), packet_(make_config(c, pp), FieldGridOptions{period, 12.0}) {}
  WaveSlice slice(double t, const simd::UniformGrid& g, int threads,
                  std::vector<Flag>&) const override {
    return packet_.slice(t, g, threads);
  }
  Complex psi(double t, double x) const override { return packet_.at(t, x).psi; }
  double xbar(double t) const override { return field_trajectory(t, packet_.motion()).x; }
  double pbar(double t) const override {
    return field_trajectory(t, packet_.motion()).momentum(packet_.config().params);
  }
  double action(double t) const override {
    const ActionResult a = action_field(t, packet_.motion());
    if (!a.converged) throw AccuracyError("classical action quadrature did not converge");
    return a.value;
  }
  std::optional<analysis::MomentumSpectrum> mode_spectrum(double t,
                                                          const Case& c) const override {
    // Psi~(p) = sqrt(2 pi) N psi_p(t) for the canonical momentum p.
    analysis::MomentumSpectrum s;
    s.t = t;
    const double scale = 2.0 * std::acos(-1.0) * packet_.normalization() * packet_.normalization();
    for (std::size_t k = 0; k < c.p_count; ++k) {
      const double p = c.p_min + (c.p_max - c.p_min) * static_cast<double>(k) /
                                     static_cast<double>(c.p_count - 1);
      s.p.push_back(p);
      s.rho_tilde.push_back(scale * std::norm(packet_.mode_psi(t, p).psi));
    }
    return s;
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back(fmt::format(
        "{}: {} field modes, dp = {:.6g}, period {:.6g}, window 12/sigma0; "
        "parabolic cylinder functions by series, asymptotic expansion and Taylor ODE "
        "bridge (target 1e-12, failure above 1e-8)",
        label_, packet_.momenta().size(), packet_.spacing(), packet_.period()));
  }
  double constancy() const {
    const auto& c = packet_.config();
    return packet_.constancy_residual(c.p0 - 3.0 / c.sigma0, c.p0 + 3.0 / c.sigma0, 61);
  }

 private:
  static FieldPacketConfig make_config(const Case& c, const PhysParams& pp) {
    FieldPacketConfig f;
    f.sigma0 = c.sigma0;
    f.p0 = c.p0;
    f.x0 = c.x0;
    f.force = c.force;
    f.mass = pp.m;
    f.params = pp;
    return f;
  }
  std::string label_;
  FieldPacket packet_;
};

std::unique_ptr<Model> make_model(const Scenario& s, const Case& c) {
  switch (s.family) {
    case Family::closed_free: return std::make_unique<ClosedModel>(c, s.params);
    case Family::gauss_free: return std::make_unique<GaussModel>(c, s.params, s.period);
    case Family::uniform_field: return std::make_unique<FieldModel>(c, s.params, s.period);
  }
  throw std::logic_error("unknown family");
}

struct SliceResult {
  bool done = false;
  std::string error;
  WaveSlice wave;
  DensitySlice density;
  double charge = 0.0;
  analysis::GaussFitResult fit_psi, fit_rho;
  std::optional<analysis::MomentumSpectrum> spectrum;
  std::vector<Flag> flags;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const char* header) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
  }
  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << num(v);
      first = false;
    }
    out_ << '\n';
    ++rows_;
  }
  std::size_t close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed for " + path_.string());
    return rows_;
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t rows_ = 0;
};

template <class F>
void for_each_parallel(std::size_t n, int threads, F&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads > 0 ? threads : 1, n));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  if (workers == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

nlohmann::json to_json(const Flag& f) {
  return {{"case", f.case_label}, {"t", f.t}, {"kind", f.kind}, {"detail", f.detail}};
}

}  // namespace

RunManifest run(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(options.out_dir);

  RunManifest man;
  man.scenario = scenario.name;
  man.version = version();
  man.echo = scenario.echo;
  man.quadrature.push_back(std::string("synthesis kernel: ") +
                           simd::level_name(simd::active_level()));

  const bool need_slice = scenario.wants(Output::density) || scenario.wants(Output::metrics) ||
                          scenario.wants(Output::widths) ||
                          (scenario.wants(Output::spectrum) &&
                           scenario.family != Family::uniform_field);
  const bool need_fit = scenario.wants(Output::metrics) || scenario.wants(Output::widths);

  for (const Case& c : scenario.cases) {
    std::unique_ptr<Model> model;
    try {
      model = make_model(scenario, c);
    } catch (const DomainError& e) {
      throw ConfigError(scenario.name + " case " + c.label + ": " + e.what(), "case");
    } catch (const std::exception& e) {
      man.errors.push_back(c.label + ": packet construction failed: " + e.what());
      continue;
    }
    model->describe(man.quadrature);
    if (auto* g = dynamic_cast<GaussModel*>(model.get()))
      man.flags.push_back({c.label, 0.0, "suppression_ratio",
                           fmt::format("|psi~(-mc)|^2/|psi~(p0)|^2 = {:.6g}", g->suppression())});
    if (auto* f = dynamic_cast<FieldModel*>(model.get())) {
      const double r = f->constancy();
      man.flags.push_back({c.label, 0.0, r < 1e-6 ? "constancy" : "constancy_violation",
                           fmt::format("mode constancy residual {:.3g}", r)});
    }

    const simd::UniformGrid grid = uniform_grid(c.x_min, c.x_max, c.x_count);
    const std::size_t nt = scenario.ts.size();
    std::vector<SliceResult> res(nt);
    const int inner = nt == 1 ? options.threads : 1;

    if (need_slice || scenario.wants(Output::spectrum)) {
      for_each_parallel(nt, options.threads, [&](std::size_t i) {
        SliceResult& r = res[i];
        const double t = scenario.ts[i];
        try {
          if (need_slice) {
            r.wave = model->slice(t, grid, inner, r.flags);
            r.density = analysis::charge_density(r.wave, scenario.params);
            r.charge = analysis::total_charge(r.density);
          }
          if (need_fit) {
            r.fit_rho = analysis::gauss_similarity_rho(r.density, model->xbar(t));
            r.fit_psi = analysis::gauss_similarity_psi(r.wave, model->xbar(t), model->pbar(t),
                                                       scenario.params);
            if (r.fit_rho.imag_residual > 1e-3)
              r.flags.push_back({c.label, t, "imag_residual",
                                 fmt::format("imaginary part of G_rho {:.3g}",
                                             r.fit_rho.imag_residual)});
          }
          if (scenario.wants(Output::spectrum)) {
            r.spectrum = model->mode_spectrum(t, c);
            if (!r.spectrum) {
              r.spectrum = analysis::momentum_spectrum(r.wave, scenario.params, c.p_min,
                                                       c.p_max, c.p_count, inner);
              if (!r.spectrum->boundary_ok)
                r.flags.push_back({c.label, t, "spectrum_boundary",
                                   fmt::format("|Psi| at the grid ends {:.3g}",
                                               r.spectrum->boundary_psi)});
            }
          }
          r.done = true;
        } catch (const std::exception& e) {
          r.error = e.what();
        }
      });
    }

    // Charge drift relative to the first successful slice.
    if (need_slice) {
      double q0 = 0.0;
      for (std::size_t i = 0; i < nt; ++i) {
        if (!res[i].done) continue;
        if (q0 == 0.0) q0 = res[i].charge;
        const double drift = std::fabs(res[i].charge / q0 - 1.0);
        if (drift > 1e-3)
          res[i].flags.push_back({c.label, scenario.ts[i], "charge_drift",
                                  fmt::format("relative change of total charge {:.3g}", drift)});
      }
    }
    for (std::size_t i = 0; i < nt; ++i) {
      for (auto& f : res[i].flags) man.flags.push_back(f);
      if (!res[i].error.empty())
        man.errors.push_back(fmt::format("{} t={}: {}", c.label, num(scenario.ts[i]),
                                         res[i].error));
    }

    // Reference slice for peak normalization: t = 0 if listed, else the first.
    std::size_t ref = 0;
    for (std::size_t i = 0; i < nt; ++i)
      if (scenario.ts[i] == 0.0) ref = i;

    const auto file = [&](Output o) {
      return options.out_dir / fmt::format("{}_{}_{}.csv", scenario.name, c.label, output_name(o));
    };
    const auto record = [&](Output o, CsvFile& f) {
      OutputFile of;
      const auto p = file(o);
      of.rows = f.close();
      of.path = p.filename().string();
      of.kind = output_name(o);
      of.case_label = c.label;
      of.sha256 = sha256_file(p);
      man.outputs.push_back(of);
    };

    if (scenario.wants(Output::density)) {
      CsvFile f(file(Output::density), "t,x,rho,re_psi,im_psi");
      double peak = 1.0;
      if (scenario.normalization == Normalization::peak_normalized && res[ref].done)
        peak = *std::max_element(res[ref].density.rho.begin(), res[ref].density.rho.end());
      for (std::size_t i = 0; i < nt; ++i) {
        const SliceResult& r = res[i];
        if (!r.done) continue;
        double rs = 1.0, ps = 1.0;
        if (scenario.normalization == Normalization::unit_charge) {
          rs = 1.0 / r.charge;
          ps = 1.0 / std::sqrt(std::fabs(r.charge));
        } else if (scenario.normalization == Normalization::peak_normalized) {
          rs = 1.0 / peak;
          ps = 1.0 / std::sqrt(peak);
        }
        for (std::size_t j = 0; j < r.wave.xs.size(); ++j)
          f.row({r.wave.t, r.wave.xs[j], rs * r.density.rho[j], ps * r.wave.psi[j].real(),
                 ps * r.wave.psi[j].imag()});
      }
      record(Output::density, f);
    }
    if (scenario.wants(Output::metrics)) {
      CsvFile f(file(Output::metrics), "t,G_psi,sigma_psi,G_rho,sigma_rho,imag_residual");
      for (std::size_t i = 0; i < nt; ++i)
        if (res[i].done)
          f.row({scenario.ts[i], res[i].fit_psi.score, res[i].fit_psi.sigma_star,
                 res[i].fit_rho.score, res[i].fit_rho.sigma_star, res[i].fit_rho.imag_residual});
      record(Output::metrics, f);
    }
    if (scenario.wants(Output::widths)) {
      CsvFile f(file(Output::widths), "t,sigma_rho,sigma_psi");
      for (std::size_t i = 0; i < nt; ++i)
        if (res[i].done)
          f.row({scenario.ts[i], res[i].fit_rho.sigma_star, res[i].fit_psi.sigma_star});
      record(Output::widths, f);
    }
    if (scenario.wants(Output::spectrum)) {
      CsvFile f(file(Output::spectrum), "t,p,rho_tilde");
      double peak = 1.0;
      if (scenario.normalization == Normalization::peak_normalized && res[ref].done) {
        const auto& v = res[ref].spectrum->rho_tilde;
        peak = *std::max_element(v.begin(), v.end());
      }
      for (std::size_t i = 0; i < nt; ++i) {
        if (!res[i].done) continue;
        const auto& s = *res[i].spectrum;
        for (std::size_t k = 0; k < s.p.size(); ++k)
          f.row({scenario.ts[i], s.p[k], s.rho_tilde[k] / peak});
      }
      record(Output::spectrum, f);
    }
    if (scenario.wants(Output::phase)) {
      CsvFile f(file(Output::phase), "t,phi,s_cl_over_hbar,offset");
      try {
        const Model& m = *model;
        const auto tr = analysis::phase_trace(
            [&](double t, double x) { return m.psi(t, x); },
            [&](double t) { return m.xbar(t); }, [&](double t) { return m.action(t); },
            scenario.ts, scenario.params.hbar);
        for (std::size_t i = 0; i < tr.ts.size(); ++i)
          f.row({tr.ts[i], tr.phi[i], tr.s_cl[i], tr.offset[i]});
      } catch (const std::exception& e) {
        man.errors.push_back(c.label + ": phase trace failed: " + e.what());
      }
      record(Output::phase, f);
    }
  }

  man.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json j;
  j["scenario"] = man.scenario;
  j["tool"] = "relwave";
  j["version"] = man.version;
  j["family"] = family_name(scenario.family);
  j["normalization"] = normalization_name(scenario.normalization);
  j["config"] = man.echo;
  j["quadrature"] = man.quadrature;
  j["flags"] = nlohmann::json::array();
  for (const auto& f : man.flags) j["flags"].push_back(to_json(f));
  j["errors"] = man.errors;
  j["outputs"] = nlohmann::json::array();
  for (const auto& o : man.outputs)
    j["outputs"].push_back(
        {{"file", o.path}, {"kind", o.kind}, {"case", o.case_label}, {"rows", o.rows},
         {"sha256", o.sha256}});
  j["wall_seconds"] = man.wall_seconds;
  j["status"] = man.ok() ? "ok" : "numeric_errors";
  man.manifest_path = options.out_dir / (scenario.name + "_manifest.json");
  std::ofstream out(man.manifest_path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + man.manifest_path.string());
  return man;
}

}  // namespace relwave::scenario

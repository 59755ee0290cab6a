#include "nearfield/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nearfield/errors.hpp"

namespace nearfield {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const ExperimentConfig& cfg, const std::vector<std::string>& columns) {
    out_ << metadata_row(cfg) << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }
  template <typename... T>
  void row(const T&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << format(fields), first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string format(double v) { return num(v); }
  static std::string format(int v) { return std::to_string(v); }
  static std::string format(const std::string& v) { return v; }
  static std::string format(const char* v) { return v; }
  std::ostringstream out_;
};

const char* kSchema = R"(Columns of the files written by `nearfield run` and `nearfield convergence`.
Every CSV begins with one metadata row starting with '#'.

coefficients.csv   k, h_true_re, h_true_im, h_eig_re, h_eig_im, eig_provenance, h_gpt_re, h_gpt_im, gpt_pairs
                   h_true: DFT of the pushforward h. eig_provenance is "measured" for even k and
                   "not measurable at first order" for odd k (reported as 0).
eigenvalues.csv    n, parity, lambda0, lambda, shift, first_order_shift, overlap_quality, valid, flag
                   parity: even (+) or odd (-); shift = (lambda - lambda0) / delta.
spectrum.csv       index, lambda (all eigenvalues of the truncated operator, descending |lambda|)
profile_theta.csv  theta, h_true, h_proj_even, h_proj_full, h_eig, h_gpt    (h, not delta h)
profile_plane.csv  x, h0_true, h0_proj_even, h0_proj_full, h0_eig, h0_gpt   (delta h0; proj = pulled-back P_N h)
cgpt_delta.csv     n, m, re, im: N2_signed(perturbed) - N2_signed(unit disk)
scan.csv           omega, re_p, im_p
scan_peaks.csv     omega, lambda, linewidth, lambda_resolution, height
convergence_delta.csv  delta, n, residual_plus, residual_minus, ratio
convergence_M.csv      M, lambda1, drift, drift_ratio
summary.json       metrics of both routes, cluster diagnostics, notes
figure.svg         2 x 2 overlay: top row CGPT route (red), bottom row eigenvalue route (blue),
                   truth dotted, pulled-back projection P_N h grey
)";

double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

std::string metadata_row(const ExperimentConfig& cfg) {
  return std::string("# nearfield ") + kVersion + "; config=" + cfg.name + "; config_hash=" + config_hash(cfg) +
         "; exponent_sign=+2ns; geometry_filter=exp36^8@" + std::to_string(cfg.geometry_cutoff) +
         "; scan_couplings=default(assumed)";
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, p);
}

std::vector<std::string> write_run_outputs(const RunResult& r, const std::string& dir) {
  const ExperimentConfig& cfg = r.config;
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    atomic_write((fs::path(dir) / name).string(), text);
    written.push_back(name);
  };
  const bool csv = cfg.wants_format("csv");
  const int N = cfg.N;

  if (csv && r.cgpt) {
    Csv t(cfg, {"n", "m", "re", "im"});
    const SignedBasis b(r.cgpt->order);
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) t.row(b.mode(i), b.mode(j), r.cgpt_delta(i, j).real(), r.cgpt_delta(i, j).imag());
    emit("cgpt_delta.csv", t.str());
  }
  if (csv && r.eig) {
    Csv t(cfg, {"index", "lambda"});
    for (std::size_t i = 0; i < r.eig->pairs.size(); ++i) t.row(static_cast<int>(i), r.eig->pairs[i].value);
    emit("spectrum.csv", t.str());
  }
  if (csv && r.clusters) {
    Csv t(cfg, {"n", "parity", "lambda0", "lambda", "shift", "first_order_shift", "overlap_quality", "valid", "flag"});
    const auto pred = first_order_shifts(r.h_true.fourier, r.geometry.s(), r.lambda_mp, cfg.N_mat);
    for (const auto& c : r.clusters->clusters) {
      const std::string valid = c.valid ? "1" : "0";
      t.row(c.n, "+", c.lambda0, c.lambda_plus, c.shift_plus, pred[c.n - 1].plus, c.overlap_quality, valid, c.flag);
      t.row(c.n, "-", c.lambda0, c.lambda_minus, c.shift_minus, pred[c.n - 1].minus, c.overlap_quality, valid, c.flag);
    }
    emit("eigenvalues.csv", t.str());
  }
  if (csv && r.scan) {
    Csv t(cfg, {"omega", "re_p", "im_p"});
    for (std::size_t i = 0; i < r.scan->omegas.size(); ++i)
      t.row(r.scan->omegas[i], r.scan->response[i].real(), r.scan->response[i].imag());
    emit("scan.csv", t.str());
    Csv p(cfg, {"omega", "lambda", "linewidth", "lambda_resolution", "height"});
    for (const auto& pk : r.scan->peaks) p.row(pk.omega, pk.lambda, pk.linewidth, pk.lambda_resolution, pk.height);
    emit("scan_peaks.csv", p.str());
  }
  if (csv && r.reconstructed) {
    Csv t(cfg, {"k", "h_true_re", "h_true_im", "h_eig_re", "h_eig_im", "eig_provenance", "h_gpt_re", "h_gpt_im",
                "gpt_pairs"});
    for (int k = -N; k <= N; ++k) {
      const bool even = k % 2 == 0;
      t.row(k, r.h_true.fourier(k).real(), r.h_true.fourier(k).imag(), r.hhat_eig(k).real(), r.hhat_eig(k).imag(),
            even ? "measured" : "not measurable at first order", r.gpt.coefficients(k).real(),
            r.gpt.coefficients(k).imag(), static_cast<int>(r.gpt.pairs[static_cast<std::size_t>(k + N)].size()));
    }
    emit("coefficients.csv", t.str());

    Csv th(cfg, {"theta", "h_true", "h_proj_even", "h_proj_full", "h_eig", "h_gpt"});
    for (std::size_t i = 0; i < r.theta.size(); ++i)
      th.row(r.theta[i], r.h_true.samples[i], r.h_proj_even[i], r.h_proj_full[i], r.h_eig[i], r.h_gpt[i]);
    emit("profile_theta.csv", th.str());

    Csv pl(cfg, {"x", "h0_true", "h0_proj_even", "h0_proj_full", "h0_eig", "h0_gpt"});
    for (std::size_t i = 0; i < r.x.size(); ++i)
      pl.row(r.x[i], r.h0_true[i], r.h0_proj_even[i], r.h0_proj_full[i], r.h0_eig[i], r.h0_gpt[i]);
    emit("profile_plane.csv", pl.str());
  }
  if (cfg.wants_format("svg") && r.reconstructed) emit("figure.svg", render_figure_svg(r));

  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["config"] = cfg.name;
  j["config_hash"] = config_hash(cfg);
  j["exponent_sign"] = "+2ns";
  j["s"] = r.geometry.s();
  j["lambda_mp"] = r.lambda_mp;
  j["delta"] = cfg.profile.delta();
  if (r.clusters) {
    j["usable_order"] = r.clusters->usable_order;
    j["max_imag_eigenvalue"] = r.eig->max_imag;
  }
  if (r.reconstructed) {
    auto route = [](const RouteMetrics& m) {
      return nlohmann::ordered_json{{"rel_l2_vs_projection", finite_or_zero(m.rel_l2_vs_projection)},
                                    {"rel_l2_vs_truth", finite_or_zero(m.rel_l2_vs_truth)},
                                    {"max_coefficient_error", m.max_coefficient_error},
                                    {"max_true_coefficient", m.max_true_coefficient},
                                    {"plane_rel_l2", finite_or_zero(m.plane_rel_l2)}};
    };
    j["eigen_route"] = route(r.eig_metrics);
    j["gpt_route"] = route(r.gpt_metrics);
  }
  if (r.scan) {
    j["scan"] = {{"peaks", r.scan->peaks.size()}, {"low_confidence", r.scan->low_confidence},
                 {"warnings", r.scan->warnings}};
  }
  j["notes"] = r.notes;
  emit("summary.json", j.dump(2) + "\n");
  emit("schema.txt", kSchema);
  return written;
}

std::vector<std::string> write_convergence_outputs(const ExperimentConfig& cfg, const ConvergenceReport& rep,
                                                   const std::string& dir) {
  Csv d(cfg, {"delta", "n", "residual_plus", "residual_minus", "ratio"});
  for (const auto& row : rep.delta_rows) d.row(row.delta, row.n, row.residual_plus, row.residual_minus, row.ratio);
  atomic_write((fs::path(dir) / "convergence_delta.csv").string(), d.str());
  Csv m(cfg, {"M", "lambda1", "drift", "drift_ratio"});
  for (const auto& row : rep.m_rows) m.row(row.M, row.lambda1, row.drift, row.drift_ratio);
  atomic_write((fs::path(dir) / "convergence_M.csv").string(), m.str());
  atomic_write((fs::path(dir) / "schema.txt").string(), kSchema);
  return {"convergence_delta.csv", "convergence_M.csv", "schema.txt"};
}

namespace {

struct Panel {
  double x0, y0, w, h;  // pixel box
  double xmin, xmax, ymin, ymax;

  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

std::string polyline(const Panel& p, const std::vector<double>& x, const std::vector<double>& y,
                     const std::string& colour, bool dotted) {
  std::ostringstream o;
  o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
  if (dotted) o << " stroke-dasharray=\"2,3\"";
  o << " points=\"";
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", p.px(x[i]), p.py(std::clamp(y[i], p.ymin, p.ymax)));
    o << buf;
  }
  o << "\"/>\n";
  return o.str();
}

std::string frame(const Panel& p, const std::string& title) {
  std::ostringstream o;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#444\"/>\n",
                p.x0, p.y0, p.w, p.h);
  o << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" font-family=\"sans-serif\">%s</text>\n",
                p.x0, p.y0 - 6, title.c_str());
  o << buf;
  if (p.ymin < 0.0 && p.ymax > 0.0) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n",
                  p.x0, p.py(0.0), p.x0 + p.w, p.py(0.0));
    o << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" font-family=\"sans-serif\">[%.3g, %.3g] x [%.3g, %.3g]</text>\n",
                p.x0, p.y0 + p.h + 14, p.xmin, p.xmax, p.ymin, p.ymax);
  o << buf;
  return o.str();
}

std::pair<double, double> range_of(std::initializer_list<const std::vector<double>*> series) {
  double lo = 0.0, hi = 0.0;
  for (const auto* s : series)
    for (double v : *s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const double pad = 0.08 * std::max(hi - lo, 1e-12);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_figure_svg(const RunResult& r) {
  const double delta = r.config.profile.delta();
  auto scaled = [&](const std::vector<double>& v) {
    std::vector<double> out(v);
    for (double& x : out) x *= delta;
    return out;
  };
  const auto dh_true = scaled(r.h_true.samples), dh_gpt = scaled(r.h_gpt), dh_eig = scaled(r.h_eig);
  const auto dh_pf = scaled(r.h_proj_full), dh_pe = scaled(r.h_proj_even);
  const auto [tlo, thi] = range_of({&dh_true, &dh_gpt, &dh_eig});
  const auto [xlo, xhi] = range_of({&r.h0_true, &r.h0_gpt, &r.h0_eig});

  const double W = 900, H = 640, m = 50, gap = 60;
  const double pw = (W - 2 * m - gap) / 2, ph = (H - 2 * m - gap) / 2;
  const Panel a{m, m, pw, ph, 0.0, 2.0 * kPi, tlo, thi};
  const Panel b{m + pw + gap, m, pw, ph, r.x.front(), r.x.back(), xlo, xhi};
  const Panel c{m, m + ph + gap, pw, ph, 0.0, 2.0 * kPi, tlo, thi};
  const Panel d{m + pw + gap, m + ph + gap, pw, ph, r.x.front(), r.x.back(), xlo, xhi};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << frame(a, "(a) delta h, CGPT route") << frame(b, "(b) delta h0, CGPT route")
    << frame(c, "(c) delta h, eigenvalue route") << frame(d, "(d) delta h0, eigenvalue route");
  // Grey: the projection P_N h each route aims at.
  o << polyline(a, r.theta, dh_pf, "#999999", false) << polyline(b, r.x, r.h0_proj_full, "#999999", false);
  o << polyline(c, r.theta, dh_pe, "#999999", false) << polyline(d, r.x, r.h0_proj_even, "#999999", false);
  o << polyline(a, r.theta, dh_true, "black", true) << polyline(a, r.theta, dh_gpt, "#d62728", false);
  o << polyline(b, r.x, r.h0_true, "black", true) << polyline(b, r.x, r.h0_gpt, "#d62728", false);
  o << polyline(c, r.theta, dh_true, "black", true) << polyline(c, r.theta, dh_eig, "#1f77b4", false);
  o << polyline(d, r.x, r.h0_true, "black", true) << polyline(d, r.x, r.h0_eig, "#1f77b4", false);
  o << "</svg>\n";
  return o.str();
}

}  // namespace nearfield

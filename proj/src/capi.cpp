#include "lamhull.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "lamhull/curves.hpp"
#include "lamhull/hull.hpp"
#include "lamhull/stability.hpp"

struct lamhull_problem {
  lamhull::Spectrum3 S;
  lamhull::OptimalCurves curves;
  std::optional<lamhull::HullPolygon> hull;
};

namespace {

thread_local std::string g_error;

lamhull_status status_of(lamhull::Errc c) {
  using lamhull::Errc;
  switch (c) {
    case Errc::invalid_argument:
    case Errc::non_positive:
    case Errc::trace_mismatch:
    case Errc::not_distinct:
    case Errc::config_error:
      return LAMHULL_EINVAL;
    case Errc::not_admissible:
    case Errc::empty_admissible_set:
    case Errc::degenerate_denominator:
    case Errc::degenerate_lambda:
    case Errc::degenerate_xi1:
    case Errc::no_real_roots:
    case Errc::unsupported:
      return LAMHULL_EDOMAIN;
    default:
      return LAMHULL_EFAIL;
  }
}

template <class F>
lamhull_status guarded(F&& f) {
  try {
    f();
    return LAMHULL_OK;
  } catch (const lamhull::Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return LAMHULL_EFAIL;
  }
}

lamhull_status einval(const char* msg) {
  g_error = msg;
  return LAMHULL_EINVAL;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lamhull::Branch branch_of(int b) {
  if (b != 0 && b != 1) {
    lamhull::fail(lamhull::Errc::invalid_argument,
                  "branch must be 0 (alpha) or 1 (beta)");
  }
  return b == 0 ? lamhull::Branch::alpha : lamhull::Branch::beta;
}

}  // namespace

extern "C" {

const char* lamhull_status_name(lamhull_status s) {
  switch (s) {
    case LAMHULL_OK:
      return "ok";
    case LAMHULL_EINVAL:
      return "invalid_input";
    case LAMHULL_EDOMAIN:
      return "out_of_domain";
    default:
      return "failure";
  }
}

const char* lamhull_last_error(void) { return g_error.c_str(); }

void lamhull_string_free(char* s) { std::free(s); }

lamhull_status lamhull_problem_create(double s1, double s2, double s3,
                                      lamhull_problem** out) {
  if (!out) return einval("null output pointer");
  *out = nullptr;
  return guarded([&] {
    const lamhull::Spectrum3 S = lamhull::make_spectrum(s1, s2, s3);
    *out = new lamhull_problem{S, lamhull::OptimalCurves(S), std::nullopt};
  });
}

void lamhull_problem_destroy(lamhull_problem* p) { delete p; }

lamhull_status lamhull_spectrum_invariants(double m1, double m2, double m3,
                                           double* i2, double* i3) {
  if (!i2 || !i3) return einval("null output pointer");
  return guarded([&] {
    const auto ip = lamhull::invariant_pair(lamhull::make_spectrum(m1, m2, m3));
    *i2 = ip.x;
    *i3 = ip.y;
  });
}

lamhull_status lamhull_spectrum_embed(double m1, double m2, double m3,
                                      double* u, double* v) {
  if (!u || !v) return einval("null output pointer");
  return guarded([&] {
    const auto p = lamhull::embed_plane(lamhull::make_spectrum(m1, m2, m3));
    *u = p.u;
    *v = p.v;
  });
}

lamhull_status lamhull_problem_params(const lamhull_problem* p,
                                      double out[10]) {
  if (!p || !out) return einval("null pointer");
  const lamhull::OptimalParams& o = p->curves.params();
  out[0] = o.u_alpha;
  out[1] = o.u_beta;
  out[2] = o.alpha;
  out[3] = o.beta;
  out[4] = o.U_alpha.m1;
  out[5] = o.U_alpha.m2;
  out[6] = o.U_alpha.m3;
  out[7] = o.U_beta.m1;
  out[8] = o.U_beta.m2;
  out[9] = o.U_beta.m3;
  return LAMHULL_OK;
}

lamhull_status lamhull_problem_slopes(const lamhull_problem* p,
                                      double* slope_alpha,
                                      double* slope_beta) {
  if (!p || !slope_alpha || !slope_beta) return einval("null pointer");
  return guarded([&] {
    *slope_alpha = p->curves.slope_at_base(lamhull::Branch::alpha);
    *slope_beta = p->curves.slope_at_base(lamhull::Branch::beta);
  });
}

lamhull_status lamhull_problem_angle_report(const lamhull_problem* p,
                                            char** json) {
  if (!p || !json) return einval("null pointer");
  return guarded([&] {
    const lamhull::AngleReport r = lamhull::check_angle_formulas(p->S);
    nlohmann::ordered_json j;
    j["quotient_num_alpha"] = r.quotient_num_alpha;
    j["quotient_den_alpha"] = r.quotient_den_alpha;
    j["quotient_num_beta"] = r.quotient_num_beta;
    j["quotient_den_beta"] = r.quotient_den_beta;
    j["quotient_cos2phi_alpha"] = r.quotient_cos2phi_alpha;
    j["quotient_cos2phi_beta"] = r.quotient_cos2phi_beta;
    j["quotient_alpha_in_range"] = r.quotient_alpha_in_range;
    j["quotient_beta_in_range"] = r.quotient_beta_in_range;
    j["quotient_cos2theta_alpha"] = r.quotient_cos2theta_alpha;
    j["quotient_cos2theta_beta"] = r.quotient_cos2theta_beta;
    j["spectral_cos2phi_alpha"] = r.spectral_cos2phi_alpha;
    j["spectral_cos2phi_beta"] = r.spectral_cos2phi_beta;
    j["spectral_cos2theta_alpha"] = r.spectral_cos2theta_alpha;
    j["spectral_cos2theta_beta"] = r.spectral_cos2theta_beta;
    j["rel_gap_alpha"] = r.rel_gap_alpha;
    j["rel_gap_beta"] = r.rel_gap_beta;
    j["mismatch_alpha"] = r.mismatch_alpha;
    j["mismatch_beta"] = r.mismatch_beta;
    *json = copy_string(j.dump(2));
  });
}

lamhull_status lamhull_curve_samples(const lamhull_problem* p, int branch,
                                     int n, double* rows) {
  if (!p || !rows) return einval("null pointer");
  return guarded([&] {
    const auto samples = p->curves.sample(branch_of(branch), n);
    for (size_t i = 0; i < samples.size(); ++i) {
      const lamhull::CurveSample& s = samples[i];
      double* r = rows + 7 * i;
      r[0] = s.t;
      r[1] = s.e2;
      r[2] = s.spectrum.m1;
      r[3] = s.spectrum.m2;
      r[4] = s.spectrum.m3;
      r[5] = s.inv.x;
      r[6] = s.inv.y;
    }
  });
}

lamhull_status lamhull_admissible_set(const double F[3], const double G[3],
                                      double out[4], int* n_components) {
  if (!F || !G || !out || !n_components) return einval("null pointer");
  return guarded([&] {
    const auto A = lamhull::admissible_set(
        lamhull::make_spectrum(F[0], F[1], F[2]),
        lamhull::make_spectrum(G[0], G[1], G[2]));
    int n = 0;
    if (A.lower) {
      out[2 * n] = A.lower->lo;
      out[2 * n + 1] = A.lower->hi;
      ++n;
    }
    if (A.upper) {
      out[2 * n] = A.upper->lo;
      out[2 * n + 1] = A.upper->hi;
      ++n;
    }
    *n_components = n;
  });
}

lamhull_status lamhull_trajectory_lambdas(const double F[3], const double G[3],
                                          double out[8], int* n) {
  if (!F || !G || !out || !n) return einval("null pointer");
  return guarded([&] {
    const lamhull::Spectrum3 f = lamhull::make_spectrum(F[0], F[1], F[2]);
    const lamhull::Spectrum3 g = lamhull::make_spectrum(G[0], G[1], G[2]);
    const auto A = lamhull::admissible_set(f, g);
    if (A.empty()) {
      lamhull::fail(lamhull::Errc::empty_admissible_set,
                    "no lamination factor connects the two spectra");
    }
    std::vector<double> lams = A.endpoints();
    const double mid_ratio = g.m2 / f.m2;
    if (A.contains(mid_ratio) &&
        std::none_of(lams.begin(), lams.end(), [&](double v) {
          return std::abs(v - mid_ratio) <= 1e-12;
        })) {
      lams.push_back(mid_ratio);
    }
    std::sort(lams.begin(), lams.end());
    *n = static_cast<int>(std::min<size_t>(lams.size(), 8));
    std::copy_n(lams.begin(), *n, out);
  });
}

lamhull_status lamhull_trajectory_rows(const double F[3], const double G[3],
                                       double lambda, int n_t, double* rows) {
  if (!F || !G || !rows) return einval("null pointer");
  if (n_t < 2) return einval("n_t must be >= 2");
  return guarded([&] {
    const auto conn = lamhull::connect(
        lamhull::make_spectrum(F[0], F[1], F[2]),
        lamhull::make_spectrum(G[0], G[1], G[2]), lambda);
    for (int i = 0; i < n_t; ++i) {
      const double t = static_cast<double>(i) / (n_t - 1);
      const auto tp = lamhull::trajectory(conn, t);
      double* r = rows + 6 * i;
      r[0] = tp.t;
      r[1] = tp.spectrum.m1;
      r[2] = tp.spectrum.m2;
      r[3] = tp.spectrum.m3;
      r[4] = tp.inv.x;
      r[5] = tp.inv.y;
    }
  });
}

lamhull_status lamhull_hull_build(lamhull_problem* p, int samples_per_branch,
                                  double boundary_tol) {
  if (!p) return einval("null pointer");
  return guarded([&] {
    p->hull = lamhull::build_gamma(p->S, samples_per_branch, boundary_tol);
  });
}

lamhull_status lamhull_hull_size(const lamhull_problem* p, int* n_vertices) {
  if (!p || !n_vertices) return einval("null pointer");
  if (!p->hull) return einval("hull not built");
  *n_vertices = static_cast<int>(p->hull->vertices().size());
  return LAMHULL_OK;
}

lamhull_status lamhull_hull_rows(const lamhull_problem* p, double* rows) {
  if (!p || !rows) return einval("null pointer");
  if (!p->hull) return einval("hull not built");
  const auto& vs = p->hull->vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    double* r = rows + 5 * i;
    r[0] = vs[i].p.u;
    r[1] = vs[i].p.v;
    r[2] = vs[i].m[0];
    r[3] = vs[i].m[1];
    r[4] = vs[i].m[2];
  }
  return LAMHULL_OK;
}

lamhull_status lamhull_hexagon_rows(const lamhull_problem* p,
                                    double rows[30]) {
  if (!p || !rows) return einval("null pointer");
  return guarded([&] {
    const lamhull::Hexagon hex = lamhull::hexagon(p->S);
    for (int i = 0; i < 6; ++i) {
      double* r = rows + 5 * i;
      r[0] = hex.verts[i].p.u;
      r[1] = hex.verts[i].p.v;
      r[2] = hex.verts[i].m[0];
      r[3] = hex.verts[i].m[1];
      r[4] = hex.verts[i].m[2];
    }
  });
}

lamhull_status lamhull_hull_contains(const lamhull_problem* p, double m1,
                                     double m2, double m3, int* membership,
                                     double* distance) {
  if (!p || !membership || !distance) return einval("null pointer");
  if (!p->hull) return einval("hull not built");
  return guarded([&] {
    const auto cls = p->hull->classify(lamhull::make_spectrum(m1, m2, m3));
    *membership = static_cast<int>(cls.membership);
    *distance = cls.boundary_distance;
  });
}

lamhull_status lamhull_verify(const lamhull_problem* p, const char* suite,
                              uint64_t seed, int grid, int samples,
                              double boundary_tol, char** json, int* passed) {
  if (!p || !suite || !json || !passed) return einval("null pointer");
  if (grid < 8) return einval("grid must be >= 8");
  if (samples < 1) return einval("samples must be >= 1");
  if (!(boundary_tol > 0.0)) return einval("boundary_tol must be positive");
  return guarded([&] {
    lamhull::SuiteOptions opt;
    opt.grid = grid;
    opt.samples = samples;
    opt.seed = seed;
    opt.hull_resolution = std::max(64, grid);
    opt.boundary_tol = boundary_tol;
    opt.sweep = {samples, 16, 32, seed};
    const auto reports = lamhull::run_suite(suite, p->S, opt);
    *json = copy_string(lamhull::reports_to_json(reports));
    *passed = std::all_of(reports.begin(), reports.end(),
                          [](const lamhull::CheckReport& r) {
                            return r.passed;
                          })
                  ? 1
                  : 0;
  });
}

}  // extern "C"

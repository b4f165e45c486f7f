#include "kinkfield/serialize.hpp"

namespace kinkfield {

json to_json(const ModelParams& p) {
  return {{"kappa", p.kappa()}, {"lambda", p.lambda()}, {"C", p.C()}, {"x1", p.x1()},
          {"H", p.H()},         {"b", p.b()},           {"sigma2", p.sigma2()}};
}

json to_json(const QuadratureResult& r) {
  return {{"value", r.value},
          {"error_estimate", r.error_estimate},
          {"evaluations", r.evaluations},
          {"converged", r.converged}};
}

json to_json(const EnergyReport& r) {
  return {{"quadrature_x", to_json(r.quadrature_x)},
          {"quadrature_I", to_json(r.quadrature_I)},
          {"closed_form", r.closed_form},
          {"discrepancy_x_vs_I", r.discrepancy_x_vs_I},
          {"discrepancy_vs_closed_form", r.discrepancy_vs_closed_form}};
}

json to_json(const ResidualReport& r) {
  json equations = json::array();
  for (const auto& n : r.equations) {
    equations.push_back({{"id", n.id},
                         {"max_abs", n.max_abs},
                         {"l2", n.l2},
                         {"normalized_max", n.normalized_max},
                         {"max_pointwise_normalized", n.max_pointwise_normalized},
                         {"pass", n.pass}});
  }
  return {{"params", to_json(r.params)},
          {"grid", {{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"n", r.grid.n}}},
          {"fd", {{"order", r.fd_order}}},
          {"asymptotic_threshold", kAsymptoticThreshold},
          {"equations", equations},
          {"pass", r.pass},
          {"tolerance", r.tolerance}};
}

json to_json(const GrowthFit& f) {
  return {{"x", f.x},
          {"fitted_rate", f.fitted_rate},
          {"predicted_rate", f.predicted_rate},
          {"relative_error", f.relative_error},
          {"fit_r2", f.fit_r2},
          {"window_sensitivity", f.window_sensitivity}};
}

json to_json(const IndefinitenessWitness& w) {
  const auto& grid = w.pert_plus.grid;
  return {{"value_plus", w.value_plus},
          {"value_minus", w.value_minus},
          {"shapes",
           {{"plus", "xi = sech^3(b (x - x1)), a0 = a1 = 0, static"},
            {"minus", "a1 = sech(b (x - x1)), a0 = xi = 0, static"},
            {"grid", {{"x_min", grid.front()}, {"x_max", grid.back()}, {"n", grid.size()}}}}}};
}

json to_json(const Profile& profile) {
  json points = json::array();
  for (const auto& p : profile.points) {
    points.push_back({{"x", p.x},
                      {"A", p.A},
                      {"A_prime", p.A_prime},
                      {"gamma", p.gamma},
                      {"beta", p.beta},
                      {"alpha", p.alpha},
                      {"I", p.I},
                      {"P", p.P},
                      {"phi_prime", p.phi_prime}});
  }
  return {{"params", to_json(profile.params)}, {"points", points}};
}

}  // namespace kinkfield

#pragma once

#include <json.hpp>

#include "kinkfield/observables.hpp"
#include "kinkfield/params.hpp"
#include "kinkfield/quadrature.hpp"
#include "kinkfield/residuals.hpp"
#include "kinkfield/stability.hpp"

namespace kinkfield {

using json = nlohmann::ordered_json;

json to_json(const ModelParams& params);
json to_json(const QuadratureResult& result);
json to_json(const EnergyReport& report);
json to_json(const ResidualReport& report);
json to_json(const GrowthFit& fit);
json to_json(const IndefinitenessWitness& witness);
json to_json(const Profile& profile);

}  // namespace kinkfield

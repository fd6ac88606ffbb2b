#include "hsig/filtered_process.hpp"

#include <algorithm>

namespace hsig {

namespace {

struct MapInfo {
  const char* name;
  MapKind kind;
  int min_params;
  int max_params;  // -1: unbounded
};

constexpr MapInfo kMaps[] = {
    {"constant", MapKind::constant, 1, 1}, {"identity", MapKind::identity, 0, 1},
    {"power", MapKind::power, 1, 1},       {"product", MapKind::product, 0, 0},
    {"sum", MapKind::sum, 0, 0},           {"affine", MapKind::affine, 1, -1},
    {"min", MapKind::min, 0, 0},           {"max", MapKind::max, 0, 0},
    {"clamp", MapKind::clamp, 2, 2},
};

bool is_nonneg_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1 && q >= 0;
}

}  // namespace

MapSpec MapSpec::from_name(const std::string& name, std::vector<Rational> params) {
  for (const auto& m : kMaps) {
    if (name != m.name) continue;
    const int n = static_cast<int>(params.size());
    if (n < m.min_params || (m.max_params >= 0 && n > m.max_params))
      throw ConfigError("map '" + name + "' got " + std::to_string(n) + " parameters");
    if ((m.kind == MapKind::power || m.kind == MapKind::identity) && n == 1 &&
        !is_nonneg_integer(params[0]))
      throw ConfigError("map '" + name + "' needs a nonnegative integer parameter");
    if (m.kind == MapKind::clamp && params[0] > params[1])
      throw ConfigError("clamp bounds out of order");
    return MapSpec{m.kind, std::move(params)};
  }
  throw ConfigError("unknown built-in map id '" + name + "'");
}

std::string MapSpec::name() const {
  for (const auto& m : kMaps)
    if (m.kind == kind) return m.name;
  return "?";
}

AdaptedFunctional AdaptedFunctional::coord(std::vector<int> times, MapSpec f) {
  if (times.empty()) throw ConfigError("coordinate evaluation needs at least one time");
  for (int t : times)
    if (t < 0) throw ConfigError("negative time in coordinate evaluation");
  return AdaptedFunctional(std::make_shared<const NodeData>(
      NodeData{Kind::coord_eval, std::move(f), std::move(times), 0, {}}));
}

AdaptedFunctional AdaptedFunctional::compose(MapSpec f, std::vector<AdaptedFunctional> args) {
  if (args.empty()) throw ConfigError("composition needs at least one argument");
  return AdaptedFunctional(std::make_shared<const NodeData>(
      NodeData{Kind::compose, std::move(f), {}, 0, std::move(args)}));
}

AdaptedFunctional AdaptedFunctional::cond_exp(AdaptedFunctional arg, int t) {
  if (t < 0) throw ConfigError("negative conditioning time");
  return AdaptedFunctional(
      std::make_shared<const NodeData>(NodeData{Kind::cond_exp, MapSpec{}, {}, t, {std::move(arg)}}));
}

int AdaptedFunctional::rank() const {
  switch (kind()) {
    case Kind::coord_eval:
      return 0;
    case Kind::compose: {
      int r = 0;
      for (const auto& a : args()) r = std::max(r, a.rank());
      return r;
    }
    case Kind::cond_exp:
      return args()[0].rank() + 1;
  }
  return 0;
}

int AdaptedFunctional::max_time() const {
  int t = 0;
  switch (kind()) {
    case Kind::coord_eval:
      for (int s : times()) t = std::max(t, s);
      break;
    case Kind::compose:
      for (const auto& a : args()) t = std::max(t, a.max_time());
      break;
    case Kind::cond_exp:
      t = std::max(time(), args()[0].max_time());
      break;
  }
  return t;
}

}  // namespace hsig

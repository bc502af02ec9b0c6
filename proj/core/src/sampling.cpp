#include "causalg/sampling.hpp"

namespace causalg {

Rational random_unit_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> draw(0, 1 << 16);
  return rational(draw(rng), 1 << 16);
}

ParameterPoint sample_parameter_point(const CompiledModel& model,
                                      std::mt19937_64& rng) {
  ParameterPoint point;
  std::uniform_int_distribution<long> draw(1, (1 << 16) - 1);
  for (const auto& block : model.blocks) {
    std::vector<long> raw;
    long total = 0;
    for (std::size_t i = 0; i < block.vars.size(); ++i) {
      raw.push_back(draw(rng));
      total += raw.back();
    }
    for (std::size_t i = 0; i < block.vars.size(); ++i)
      point.assignment[block.vars[i]] = rational(raw[i], total);
  }
  for (int v : model.auxiliary)
    point.assignment[v] = random_unit_rational(rng);
  return point;
}

}  // namespace causalg

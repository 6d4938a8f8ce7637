#include "imatch/choice.hpp"

#include <algorithm>
#include <stdexcept>

namespace imatch {

std::vector<int> choose(const Market& market, AgentId agent, std::span<const int> offered,
                        int capacity) {
  if (capacity < 1) throw std::invalid_argument("choice capacity must be >= 1");
  std::vector<int> chosen;
  chosen.reserve(offered.size());
  for (int partner : offered) {
    if (market.accepts(agent, partner)) chosen.push_back(partner);
  }
  auto by_rank = [&](int a, int b) { return market.rank(agent, a) < market.rank(agent, b); };
  const auto keep = std::min(chosen.size(), static_cast<std::size_t>(capacity));
  std::partial_sort(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(keep), chosen.end(),
                    by_rank);
  chosen.resize(keep);
  return chosen;
}

}  // namespace imatch

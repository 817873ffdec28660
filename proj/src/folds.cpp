#include "tweetsense/folds.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tweetsense/error.hpp"

namespace tweetsense {

std::vector<int> stratified_folds(std::span<const int> labels, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("fold count must be at least 2");
  if (static_cast<std::size_t>(k) > labels.size()) {
    throw InvalidArgument("fold count " + std::to_string(k) + " exceeds " +
                          std::to_string(labels.size()) + " examples");
  }
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<int> folds(labels.size(), 0);
  int next = 0;
  for (auto& [_, members] : by_class) {
    // Fisher-Yates with our own index draws so the order does not depend on
    // the standard library's shuffle.
    for (std::size_t i = members.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(members[i - 1], members[j]);
    }
    for (std::size_t idx : members) {
      folds[idx] = next;
      next = (next + 1) % k;
    }
  }
  return folds;
}

std::vector<std::size_t> fold_members(std::span<const int> folds, int fold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (folds[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> fold_complement(std::span<const int> folds, int fold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (folds[i] != fold) out.push_back(i);
  }
  return out;
}

}  // namespace tweetsense

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tweetsense {

/// Stratified k-fold assignment. Each class's members are shuffled with a
/// generator seeded by `seed`, then dealt round-robin to folds, continuing
/// the rotation across classes so fold sizes differ by at most one.
/// Returns the fold index of every example. Throws InvalidArgument when
/// k < 2 or k exceeds the number of examples.
std::vector<int> stratified_folds(std::span<const int> labels, int k, std::uint64_t seed);

/// Indices whose fold equals / differs from `fold`.
std::vector<std::size_t> fold_members(std::span<const int> folds, int fold);
std::vector<std::size_t> fold_complement(std::span<const int> folds, int fold);

}  // namespace tweetsense

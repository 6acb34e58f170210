#include "manilift/skeleton.hpp"

#include <numeric>
#include <set>

namespace manilift {

Skeleton::Skeleton(std::vector<int> parents,
                   std::vector<std::pair<int, int>> symmetry,
                   std::vector<std::string> joint_names)
    : parents_(std::move(parents)), symmetry_(std::move(symmetry)), joint_names_(std::move(joint_names)) {
  if (parents_.empty()) throw std::invalid_argument("Skeleton: empty parent list");
  if (parents_[0] != -1)
    throw std::invalid_argument("Skeleton: joint 0 is the root and must have parent -1");
  for (std::size_t j = 1; j < parents_.size(); ++j) {
    if (parents_[j] < 0 || parents_[j] >= static_cast<int>(j))
      throw std::invalid_argument("Skeleton: parent(" + std::to_string(j) + ") must be in [0, " +
                                  std::to_string(j) + ")");
  }
  if (!joint_names_.empty() && joint_names_.size() != parents_.size())
    throw std::invalid_argument("Skeleton: joint_names size mismatch");

  std::set<int> lhs, rhs;
  for (const auto& [left, right] : symmetry_) {
    if (left <= 0 || right <= 0 || left >= joint_count() || right >= joint_count() || left == right)
      throw std::invalid_argument("Skeleton: symmetry pair out of range");
    if (!lhs.insert(left).second || !rhs.insert(right).second)
      throw std::invalid_argument("Skeleton: symmetry maps must be bijective");
    if (depth(left) != depth(right))
      throw std::invalid_argument("Skeleton: symmetric joints must share parent-chain depth");
  }
  for (int left : lhs)
    if (rhs.count(left)) throw std::invalid_argument("Skeleton: left/right joint sets must be disjoint");
}

Skeleton Skeleton::chain(int joint_count) {
  if (joint_count < 1) throw std::invalid_argument("Skeleton::chain: joint_count must be positive");
  std::vector<int> parents(joint_count);
  std::iota(parents.begin(), parents.end(), -1);
  return Skeleton(std::move(parents));
}

int Skeleton::depth(int joint) const {
  int hops = 0;
  for (int j = joint; j != 0; j = parents_[j]) ++hops;
  return hops;
}

}  // namespace manilift

#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace uavmec {

struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
};

/// Fixed-capacity ring of transitions. Once full, each push replaces the
/// oldest stored transition.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return storage_.size(); }
  bool full() const { return size_ == storage_.size(); }

  /// k-th oldest transition, k in [0, size()).
  const Transition& chronological(std::size_t k) const;

  /// Uniform draw of `count` transitions, with replacement.
  std::vector<const Transition*> sample(std::size_t count, std::mt19937_64& rng) const;

 private:
  std::vector<Transition> storage_;
  std::size_t next_ = 0;
  std::size_t size_ = 0;
};

}  // namespace uavmec

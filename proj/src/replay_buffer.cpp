#include "uavmec/replay_buffer.hpp"

#include <stdexcept>

namespace uavmec {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : storage_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  storage_[next_] = std::move(t);
  next_ = (next_ + 1) % storage_.size();
  if (size_ < storage_.size()) ++size_;
}

const Transition& ReplayBuffer::chronological(std::size_t k) const {
  if (k >= size_) throw std::out_of_range("replay buffer index out of range");
  const std::size_t oldest = full() ? next_ : 0;
  return storage_[(oldest + k) % storage_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t count, std::mt19937_64& rng) const {
  if (size_ == 0) throw std::logic_error("cannot sample from an empty replay buffer");
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<const Transition*> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(&storage_[pick(rng)]);
  return out;
}

}  // namespace uavmec

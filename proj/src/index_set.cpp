#include "bpb4/index_set.hpp"

#include <bit>
#include <stdexcept>

namespace bpb4 {
namespace {

void check_range(int i) {
  if (i < 1 || i > IndexSet::kMax) {
    throw std::out_of_range("index " + std::to_string(i) + " outside 1..8");
  }
}

}  // namespace

IndexSet::IndexSet(std::initializer_list<int> items) {
  for (int i : items) insert(i);
}

IndexSet IndexSet::interval(int lo, int hi) {
  IndexSet s;
  for (int i = lo; i <= hi; ++i) s.insert(i);
  return s;
}

IndexSet IndexSet::from_bits(std::uint16_t bits) {
  IndexSet s;
  s.bits_ = bits & 0x1FE;
  return s;
}

bool IndexSet::contains(int i) const {
  return i >= 1 && i <= kMax && ((bits_ >> i) & 1U) != 0;
}

void IndexSet::insert(int i) {
  check_range(i);
  bits_ = static_cast<std::uint16_t>(bits_ | (1U << i));
}

void IndexSet::erase(int i) {
  check_range(i);
  bits_ = static_cast<std::uint16_t>(bits_ & ~(1U << i));
}

int IndexSet::size() const { return std::popcount(bits_); }

int IndexSet::min() const {
  if (empty()) throw std::logic_error("min of empty index set");
  return std::countr_zero(bits_);
}

int IndexSet::max() const {
  if (empty()) throw std::logic_error("max of empty index set");
  return 15 - std::countl_zero(bits_);
}

std::vector<int> IndexSet::elements() const {
  std::vector<int> out;
  for (int i = 1; i <= kMax; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int i : elements()) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

}  // namespace bpb4

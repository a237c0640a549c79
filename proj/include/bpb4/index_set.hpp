#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace bpb4 {

/// A subset of {1, ..., 8}. Quadruple positions use 1..4, vertex labels of
/// the face E1 use 1..8; labels are 1-based to match the usual notation.
class IndexSet {
 public:
  static constexpr int kMax = 8;

  IndexSet() = default;
  IndexSet(std::initializer_list<int> items);

  /// {lo, lo+1, ..., hi}; empty when lo > hi.
  static IndexSet interval(int lo, int hi);
  static IndexSet from_bits(std::uint16_t bits);

  bool contains(int i) const;
  void insert(int i);
  void erase(int i);

  int size() const;
  bool empty() const { return bits_ == 0; }
  int min() const;
  int max() const;

  std::vector<int> elements() const;
  bool subset_of(const IndexSet& other) const { return (bits_ & ~other.bits_) == 0; }
  std::uint16_t bits() const { return bits_; }

  IndexSet operator&(const IndexSet& o) const { return from_bits(bits_ & o.bits_); }
  IndexSet operator|(const IndexSet& o) const { return from_bits(bits_ | o.bits_); }
  bool operator==(const IndexSet& o) const = default;

  /// "{1,3,4}"
  std::string to_string() const;

 private:
  std::uint16_t bits_ = 0;
};

}  // namespace bpb4

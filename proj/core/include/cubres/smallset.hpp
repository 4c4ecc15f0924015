#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace cubres {

// A subset of at most 64 coordinate slots, stored as a bitmask.  Every facet,
// multidegree, and boundary-support set in the engine is one of these; ambient
// universes at desk scale never exceed a handful of coordinates.
class CoordSet {
 public:
  constexpr CoordSet() = default;
  constexpr explicit CoordSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr CoordSet empty_set() { return CoordSet{0}; }
  static constexpr CoordSet full(int n) {
    return CoordSet{n >= 64 ? ~0ull : ((1ull << n) - 1)};
  }
  static constexpr CoordSet single(int i) { return CoordSet{1ull << i}; }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1ull; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr CoordSet with(int i) const { return CoordSet{bits_ | (1ull << i)}; }
  constexpr CoordSet without(int i) const { return CoordSet{bits_ & ~(1ull << i)}; }

  constexpr bool subset_of(CoordSet o) const { return (bits_ & ~o.bits_) == 0; }

  friend constexpr CoordSet operator&(CoordSet a, CoordSet b) { return CoordSet{a.bits_ & b.bits_}; }
  friend constexpr CoordSet operator|(CoordSet a, CoordSet b) { return CoordSet{a.bits_ | b.bits_}; }
  friend constexpr CoordSet operator-(CoordSet a, CoordSet b) { return CoordSet{a.bits_ & ~b.bits_}; }
  friend constexpr bool operator==(CoordSet a, CoordSet b) { return a.bits_ == b.bits_; }
  friend constexpr auto operator<=>(CoordSet a, CoordSet b) { return a.bits_ <=> b.bits_; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  // Enumerates all subsets of this set in increasing mask order.
  std::vector<CoordSet> subsets() const {
    std::vector<CoordSet> out;
    std::uint64_t m = bits_;
    std::uint64_t s = 0;
    while (true) {
      out.push_back(CoordSet{s});
      if (s == m) break;
      s = (s - m) & m;
    }
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

inline std::string to_string(CoordSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : s.elements()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace cubres

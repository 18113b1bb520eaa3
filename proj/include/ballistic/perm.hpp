#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ballistic {

// One-line notation: image[p-1] is the label sitting at position p.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);  // validates bijectivity
  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int position) const { return image_[position - 1]; }
  int position_of(int label) const;
  const std::vector<int>& image() const { return image_; }
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.image_ <=> b.image_;
  }

 private:
  std::vector<int> image_;
};

// result(p) = outer(inner(p))
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& s);
// Exchange the labels at positions k and k+1.
Permutation position_swap(const Permutation& s, int k);
Permutation swap_positions(const Permutation& s, int i, int j);
// Right action: rename every label a to t(a). Commutes with position swaps.
Permutation relabel(const Permutation& s, const Permutation& t);
int sign(const Permutation& s);
int inversions(const Permutation& s);

std::uint64_t factorial(int n);
// Lexicographic rank of the one-line word, 0 .. n!-1.
std::uint64_t rank(const Permutation& s);
Permutation unrank(int n, std::uint64_t r);
std::uint64_t rank_of(const int* image, int n);
void unrank_into(int n, std::uint64_t r, int* image);
std::vector<Permutation> all_permutations(int n);

// Tree-walk code: for each position p the index of its label among the
// labels not yet used, written in ceil(log2(n-p+1)) bits.
struct PermCode {
  int n = 0;
  std::vector<bool> bits;
  friend bool operator==(const PermCode&, const PermCode&) = default;
};

int block_width(int choices);  // ceil(log2 choices)
int code_length(int n);
std::vector<int> code_blocks(const Permutation& s);
PermCode encode(const Permutation& s);
Permutation decode(const PermCode& code);
// 1-based block indices where the codes of s and position_swap(s, k) differ.
std::vector<int> code_block_diff(const Permutation& s, int k);

std::string to_hex(const PermCode& code);
PermCode from_hex(const std::string& hex, int n);

}  // namespace ballistic

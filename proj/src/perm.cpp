#include "ballistic/perm.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>

#include "ballistic/errors.hpp"

namespace ballistic {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = size();
  std::vector<char> seen(n + 1, 0);
  for (int v : image_) {
    require(v >= 1 && v <= n, "permutation label out of range");
    require(!seen[v], "permutation repeats a label");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  require(n >= 0, "negative permutation size");
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

int Permutation::position_of(int label) const {
  for (int p = 0; p < size(); ++p)
    if (image_[p] == label) return p + 1;
  fail(ErrorKind::Input, "label not present");
}

std::string Permutation::str() const {
  std::ostringstream os;
  os << '(';
  for (int p = 0; p < size(); ++p) os << (p ? "," : "") << image_[p];
  os << ')';
  return os.str();
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  require(outer.size() == inner.size(), "compose: size mismatch");
  std::vector<int> img(outer.size());
  for (int p = 1; p <= outer.size(); ++p) img[p - 1] = outer(inner(p));
  return Permutation(std::move(img));
}

Permutation inverse(const Permutation& s) {
  std::vector<int> img(s.size());
  for (int p = 1; p <= s.size(); ++p) img[s(p) - 1] = p;
  return Permutation(std::move(img));
}

Permutation swap_positions(const Permutation& s, int i, int j) {
  require(i >= 1 && i <= s.size() && j >= 1 && j <= s.size(), "swap position out of range");
  std::vector<int> img = s.image();
  std::swap(img[i - 1], img[j - 1]);
  return Permutation(std::move(img));
}

Permutation position_swap(const Permutation& s, int k) {
  require(k >= 1 && k <= s.size() - 1, "position_swap: k out of range");
  return swap_positions(s, k, k + 1);
}

Permutation relabel(const Permutation& s, const Permutation& t) {
  require(s.size() == t.size(), "relabel: size mismatch");
  return compose(t, s);
}

int inversions(const Permutation& s) {
  int inv = 0;
  for (int a = 0; a < s.size(); ++a)
    for (int b = a + 1; b < s.size(); ++b)
      if (s.image()[a] > s.image()[b]) ++inv;
  return inv;
}

int sign(const Permutation& s) {
  // cycle parity, independent of the inversion count used in tests
  std::vector<char> seen(s.size() + 1, 0);
  int parity = 0;
  for (int p = 1; p <= s.size(); ++p) {
    if (seen[p]) continue;
    int len = 0;
    for (int q = p; !seen[q]; q = s(q)) {
      seen[q] = 1;
      ++len;
    }
    parity += len - 1;
  }
  return parity % 2 ? -1 : 1;
}

std::uint64_t factorial(int n) {
  require(n >= 0 && n <= 20, "factorial out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t rank_of(const int* image, int n) {
  std::uint64_t r = 0;
  std::uint32_t used = 0;
  for (int p = 0; p < n; ++p) {
    const int v = image[p];
    // labels smaller than v that are still unused
    const std::uint32_t below = (1u << (v - 1)) - 1u;
    const int smaller = (v - 1) - std::popcount(used & below);
    r = r * static_cast<std::uint64_t>(n - p) + static_cast<std::uint64_t>(smaller);
    used |= 1u << (v - 1);
  }
  return r;
}

void unrank_into(int n, std::uint64_t r, int* image) {
  int digits[32];
  for (int p = n - 1; p >= 0; --p) {
    const std::uint64_t base = static_cast<std::uint64_t>(n - p);
    digits[p] = static_cast<int>(r % base);
    r /= base;
  }
  std::uint32_t used = 0;
  for (int p = 0; p < n; ++p) {
    int skip = digits[p];
    int v = 1;
    for (;; ++v) {
      if (used & (1u << (v - 1))) continue;
      if (skip == 0) break;
      --skip;
    }
    image[p] = v;
    used |= 1u << (v - 1);
  }
}

std::uint64_t rank(const Permutation& s) {
  require(s.size() <= 20, "rank: permutation too large");
  return rank_of(s.image().data(), s.size());
}

Permutation unrank(int n, std::uint64_t r) {
  require(n >= 0 && n <= 20, "unrank: size out of range");
  require(r < factorial(n), "unrank: rank out of range");
  std::vector<int> img(n);
  unrank_into(n, r, img.data());
  return Permutation(std::move(img));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

int block_width(int choices) {
  int w = 0;
  while ((1 << w) < choices) ++w;
  return w;
}

int code_length(int n) {
  int total = 0;
  for (int j = 2; j <= n; ++j) total += block_width(j);
  return total;
}

std::vector<int> code_blocks(const Permutation& s) {
  const int n = s.size();
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 1);
  std::vector<int> blocks(n);
  for (int p = 1; p <= n; ++p) {
    auto it = std::find(remaining.begin(), remaining.end(), s(p));
    blocks[p - 1] = static_cast<int>(it - remaining.begin());
    remaining.erase(it);
  }
  return blocks;
}

PermCode encode(const Permutation& s) {
  PermCode code;
  code.n = s.size();
  const auto blocks = code_blocks(s);
  for (int p = 1; p <= s.size(); ++p) {
    const int w = block_width(s.size() - p + 1);
    for (int b = w - 1; b >= 0; --b) code.bits.push_back((blocks[p - 1] >> b) & 1);
  }
  return code;
}

Permutation decode(const PermCode& code) {
  const int n = code.n;
  require(n >= 0, "decode: negative size");
  require(static_cast<int>(code.bits.size()) == code_length(n), "decode: wrong code length");
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 1);
  std::vector<int> img;
  std::size_t at = 0;
  for (int p = 1; p <= n; ++p) {
    const int choices = n - p + 1;
    int value = 0;
    for (int b = 0; b < block_width(choices); ++b) value = value * 2 + code.bits[at++];
    require(value < choices, "decode: block value exceeds the remaining children");
    img.push_back(remaining[value]);
    remaining.erase(remaining.begin() + value);
  }
  return Permutation(std::move(img));
}

std::vector<int> code_block_diff(const Permutation& s, int k) {
  require(k >= 1 && k <= s.size() - 1, "code_block_diff: k out of range");
  const auto a = code_blocks(s);
  const auto b = code_blocks(position_swap(s, k));
  std::vector<int> diff;
  for (int p = 0; p < s.size(); ++p)
    if (a[p] != b[p]) diff.push_back(p + 1);
  return diff;
}

std::string to_hex(const PermCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t at = 0; at < code.bits.size(); at += 4) {
    int nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const bool bit = at + b < code.bits.size() && code.bits[at + b];
      nibble = nibble * 2 + (bit ? 1 : 0);
    }
    out.push_back(digits[nibble]);
  }
  return out;
}

PermCode from_hex(const std::string& hex, int n) {
  PermCode code;
  code.n = n;
  const std::size_t len = static_cast<std::size_t>(code_length(n));
  require(hex.size() == (len + 3) / 4, "from_hex: wrong digit count");
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[d])));
    int nibble;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else fail(ErrorKind::Input, "from_hex: not a hex digit");
    for (int b = 3; b >= 0; --b) {
      const std::size_t idx = d * 4 + static_cast<std::size_t>(3 - b);
      const bool bit = (nibble >> b) & 1;
      if (idx < len) code.bits.push_back(bit);
      else require(!bit, "from_hex: nonzero padding");
    }
  }
  decode(code);  // validates block values
  return code;
}

}  // namespace ballistic

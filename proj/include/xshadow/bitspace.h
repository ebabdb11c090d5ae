// Copyright 2026 The xshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XSHADOW_BITSPACE_H
#define XSHADOW_BITSPACE_H

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xshadow {

inline constexpr int kMaxBits = 24;
/// Largest n for which full 2^n tables (twirled rows, spectra) are built.
inline constexpr int kMaxExactBits = 14;

using Word = std::uint32_t;

inline constexpr Word low_mask(int n) { return n >= 32 ? ~Word{0} : (Word{1} << n) - 1; }

/// Parity of the mod-2 inner product of two raw words.
inline constexpr int parity(Word a, Word b) { return std::popcount(a & b) & 1; }

/// An element of {0,1}^n. Bit i of the word is qubit i. The same type is used
/// for outcomes, twirl masks, wavevectors and correlator patterns.
class BitString {
  public:
    BitString() = default;
    /// Throws std::invalid_argument if n is out of [1, 24] or `bits` has a
    /// set bit at position >= n.
    BitString(int n, Word bits);

    static BitString zeros(int n) { return BitString(n, 0); }
    /// Parses left-padded binary text: the last character is qubit 0.
    static BitString parse(std::string_view text);

    int size() const { return n_; }
    Word bits() const { return bits_; }
    bool bit(int i) const { return (bits_ >> i) & 1U; }

    /// Left-padded binary text of length n (qubit n-1 first).
    std::string to_string() const;

    bool operator==(const BitString&) const = default;

  private:
    int n_ = 0;
    Word bits_ = 0;
};

/// Translation s (+) t. Throws std::invalid_argument on length mismatch.
BitString bit_xor(const BitString& a, const BitString& b);

/// (-1)^(w.s mod 2). Throws std::invalid_argument on length mismatch.
int dot_mod2_sign(const BitString& w, const BitString& s);

int hamming_weight(const BitString& b);

/// Unnormalized Walsh-Hadamard transform,
///   out[w] = sum_s (-1)^(w.s) f[s].
/// The table length must be 2^n with n <= 14; throws std::invalid_argument
/// otherwise. Applying it twice returns 2^n f.
std::vector<double> walsh_transform(std::span<const double> f);

/// Number of qubits for a table of length 2^n, or -1 if the length is not a
/// power of two.
int table_bits(std::size_t length);

/// All words of weight k among n bits, ascending.
std::vector<Word> words_of_weight(int n, int k);

}  // namespace xshadow

#endif

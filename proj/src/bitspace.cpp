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

#include "xshadow/bitspace.h"

#include <stdexcept>

#include "xshadow/kernels.h"

namespace xshadow {

BitString::BitString(int n, Word bits) : n_(n), bits_(bits) {
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("bitstring length " + std::to_string(n) + " outside [1, 24]");
    }
    if ((bits & ~low_mask(n)) != 0) {
        throw std::invalid_argument("bitstring has bits set beyond length " + std::to_string(n));
    }
}

BitString BitString::parse(std::string_view text) {
    const int n = static_cast<int>(text.size());
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("bitstring text of length " + std::to_string(n) +
                                    " outside [1, 24]");
    }
    Word bits = 0;
    for (int k = 0; k < n; ++k) {
        const char c = text[k];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring text contains '" + std::string(1, c) + "'");
        }
        if (c == '1') {
            bits |= Word{1} << (n - 1 - k);
        }
    }
    return BitString(n, bits);
}

std::string BitString::to_string() const {
    std::string out(n_, '0');
    for (int i = 0; i < n_; ++i) {
        if (bit(i)) {
            out[n_ - 1 - i] = '1';
        }
    }
    return out;
}

namespace {

void require_same_length(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("bitstring length mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    }
}

}  // namespace

BitString bit_xor(const BitString& a, const BitString& b) {
    require_same_length(a, b);
    return BitString(a.size(), a.bits() ^ b.bits());
}

int dot_mod2_sign(const BitString& w, const BitString& s) {
    require_same_length(w, s);
    return parity(w.bits(), s.bits()) ? -1 : 1;
}

int hamming_weight(const BitString& b) { return std::popcount(b.bits()); }

int table_bits(std::size_t length) {
    if (length == 0 || !std::has_single_bit(length)) {
        return -1;
    }
    return std::countr_zero(length);
}

std::vector<double> walsh_transform(std::span<const double> f) {
    const int n = table_bits(f.size());
    if (n < 0 || n > kMaxExactBits) {
        throw std::invalid_argument("walsh_transform needs a table of length 2^n with n <= 14, got " +
                                    std::to_string(f.size()));
    }
    std::vector<double> out(f.begin(), f.end());
    kernels::walsh_inplace(out);
    return out;
}

std::vector<Word> words_of_weight(int n, int k) {
    std::vector<Word> out;
    if (k < 0 || k > n) {
        return out;
    }
    for (Word w = 0; w <= low_mask(n); ++w) {
        if (std::popcount(w) == k) {
            out.push_back(w);
        }
        if (w == low_mask(n)) {
            break;
        }
    }
    return out;
}

}  // namespace xshadow

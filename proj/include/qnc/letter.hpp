// Copyright 2026 The QNC Authors
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

#ifndef QNC_LETTER_HPP
#define QNC_LETTER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qnc {

/// A two-bit symbol z1z2 of the size-four alphabet. Encoded as 2*z1 + z2,
/// so "00"->0, "01"->1, "10"->2, "11"->3.
class Letter {
   public:
    constexpr Letter() = default;
    constexpr explicit Letter(unsigned value) : value_(static_cast<std::uint8_t>(value & 3u)) {
    }
    static constexpr Letter from_bits(bool z1, bool z2) {
        return Letter((z1 ? 2u : 0u) | (z2 ? 1u : 0u));
    }

    constexpr unsigned value() const {
        return value_;
    }
    constexpr bool high_bit() const {
        return (value_ >> 1) & 1u;
    }
    constexpr bool low_bit() const {
        return value_ & 1u;
    }

    std::string str() const;
    /// Parses "00".."11". Returns nullopt on anything else.
    static std::optional<Letter> parse(std::string_view text);

    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr auto operator<=>(Letter, Letter) = default;

   private:
    std::uint8_t value_ = 0;
};

inline constexpr std::array<Letter, 4> kAllLetters = {Letter(0), Letter(1), Letter(2), Letter(3)};

enum class GroupKind { Z4, Z2xZ2 };

std::string to_string(GroupKind group);
std::optional<GroupKind> parse_group(std::string_view text);

/// Group addition on letters: mod-4 for Z4, bitwise XOR for Z2xZ2.
constexpr Letter add(GroupKind group, Letter a, Letter b) {
    if (group == GroupKind::Z4) {
        return Letter((a.value() + b.value()) & 3u);
    }
    return Letter(a.value() ^ b.value());
}

enum class MapClass { Constant, OneToOne, TwoToOne, Invalid };

std::string to_string(MapClass cls);

/// A map h: letters -> letters given by its table.
class LetterMap {
   public:
    constexpr LetterMap() : table_{Letter(0), Letter(1), Letter(2), Letter(3)} {
    }
    constexpr explicit LetterMap(std::array<Letter, 4> table) : table_(table) {
    }
    static constexpr LetterMap identity() {
        return LetterMap();
    }
    static constexpr LetterMap constant(Letter c) {
        return LetterMap({c, c, c, c});
    }

    constexpr Letter operator()(Letter x) const {
        return table_[x.value()];
    }
    constexpr const std::array<Letter, 4> &table() const {
        return table_;
    }

    /// Constant (image size 1), one-to-one (4), two-to-one (image size 2 with
    /// both values hit twice). Everything else is Invalid.
    MapClass classify() const;
    bool is_identity() const {
        return *this == identity();
    }
    /// Letters outside the image, in increasing order.
    std::vector<Letter> off_range() const;
    /// (this o inner)(x) = this(inner(x)).
    LetterMap compose(const LetterMap &inner) const;

    friend constexpr bool operator==(const LetterMap &, const LetterMap &) = default;

   private:
    std::array<Letter, 4> table_;
};

}  // namespace qnc

#endif

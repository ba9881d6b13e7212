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

#include "qnc/letter.hpp"

namespace qnc {

std::string Letter::str() const {
    return {high_bit() ? '1' : '0', low_bit() ? '1' : '0'};
}

std::optional<Letter> Letter::parse(std::string_view text) {
    if (text.size() != 2) {
        return std::nullopt;
    }
    auto bit = [](char c) -> int { return c == '0' ? 0 : c == '1' ? 1 : -1; };
    int hi = bit(text[0]);
    int lo = bit(text[1]);
    if (hi < 0 || lo < 0) {
        return std::nullopt;
    }
    return Letter::from_bits(hi == 1, lo == 1);
}

std::string to_string(GroupKind group) {
    return group == GroupKind::Z4 ? "Z4" : "Z2xZ2";
}

std::optional<GroupKind> parse_group(std::string_view text) {
    if (text == "Z4") {
        return GroupKind::Z4;
    }
    if (text == "Z2xZ2") {
        return GroupKind::Z2xZ2;
    }
    return std::nullopt;
}

std::string to_string(MapClass cls) {
    switch (cls) {
        case MapClass::Constant:
            return "constant";
        case MapClass::OneToOne:
            return "one-to-one";
        case MapClass::TwoToOne:
            return "two-to-one";
        case MapClass::Invalid:
            break;
    }
    return "invalid";
}

MapClass LetterMap::classify() const {
    std::array<int, 4> hits{};
    for (Letter x : table_) {
        ++hits[x.value()];
    }
    int image = 0;
    bool balanced = true;
    for (int h : hits) {
        if (h > 0) {
            ++image;
            balanced = balanced && (h == 2);
        }
    }
    switch (image) {
        case 1:
            return MapClass::Constant;
        case 4:
            return MapClass::OneToOne;
        case 2:
            return balanced ? MapClass::TwoToOne : MapClass::Invalid;
        default:
            return MapClass::Invalid;
    }
}

std::vector<Letter> LetterMap::off_range() const {
    std::array<bool, 4> hit{};
    for (Letter x : table_) {
        hit[x.value()] = true;
    }
    std::vector<Letter> out;
    for (Letter z : kAllLetters) {
        if (!hit[z.value()]) {
            out.push_back(z);
        }
    }
    return out;
}

LetterMap LetterMap::compose(const LetterMap &inner) const {
    std::array<Letter, 4> table{};
    for (Letter x : kAllLetters) {
        table[x.value()] = (*this)(inner(x));
    }
    return LetterMap(table);
}

}  // namespace qnc

/*
 * Copyright 2026 The supplaw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "supplaw/permutations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace supplaw {

RootOfUnity::RootOfUnity(std::int64_t num, std::int64_t den) {
    if (den <= 0) {
        throw std::invalid_argument("root of unity denominator must be positive");
    }
    num %= den;
    if (num < 0) {
        num += den;
    }
    std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity &other) const {
    std::int64_t l = std::lcm(den_, other.den_);
    return {num_ * (l / den_) + other.num_ * (l / other.den_), l};
}

Complex RootOfUnity::to_complex() const {
    if (num_ == 0) {
        return {1.0, 0.0};
    }
    // Exact values at the points where sin/cos of 2*pi*k/l are not.
    if (2 * num_ == den_) {
        return {-1.0, 0.0};
    }
    if (4 * num_ == den_) {
        return {0.0, 1.0};
    }
    if (4 * num_ == 3 * den_) {
        return {0.0, -1.0};
    }
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    return {std::cos(angle), std::sin(angle)};
}

std::string RootOfUnity::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

RootOfUnity RootOfUnity::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw std::invalid_argument("root of unity must be written k/l, got '" + std::string(text) + "'");
    }
    try {
        std::size_t used = 0;
        std::string num_text(text.substr(0, slash));
        std::string den_text(text.substr(slash + 1));
        std::int64_t num = std::stoll(num_text, &used);
        if (used != num_text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        std::int64_t den = std::stoll(den_text, &used);
        if (used != den_text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return {num, den};
    } catch (const std::logic_error &) {
        throw std::invalid_argument("malformed root of unity '" + std::string(text) + "'");
    }
}

std::strong_ordering RootOfUnity::operator<=>(const RootOfUnity &other) const {
    // Reduced fractions in [0,1): cross multiplication orders by phase and
    // ties only on equality.
    auto lhs = num_ * other.den_;
    auto rhs = other.num_ * den_;
    if (lhs != rhs) {
        return lhs <=> rhs;
    }
    return den_ <=> other.den_;
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t j = 0; j < image_.size(); ++j) {
        std::size_t k = image_[j];
        if (k >= image_.size()) {
            throw std::invalid_argument("permutation image " + std::to_string(k + 1) + " of mode " +
                                        std::to_string(j + 1) + " is outside 1.." + std::to_string(image_.size()));
        }
        if (seen[k]) {
            throw std::invalid_argument("permutation is not a bijection: mode " + std::to_string(k + 1) +
                                        " is hit twice");
        }
        seen[k] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::from_one_line(std::span<const std::size_t> one_based) {
    std::vector<std::size_t> image;
    image.reserve(one_based.size());
    for (std::size_t k : one_based) {
        if (k == 0) {
            throw std::invalid_argument("one-line permutation entries are 1-based; got 0");
        }
        image.push_back(k - 1);
    }
    return Permutation(std::move(image));
}

namespace {

[[noreturn]] void parse_fail(std::string_view text, std::size_t pos, const std::string &what) {
    throw std::invalid_argument("cannot parse permutation '" + std::string(text) + "' at column " +
                                std::to_string(pos + 1) + ": " + what);
}

std::size_t read_number(std::string_view text, std::size_t &pos) {
    std::size_t start = pos;
    std::size_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > 1'000'000) {
            parse_fail(text, start, "mode index too large");
        }
        ++pos;
    }
    if (pos == start) {
        parse_fail(text, start, "expected a mode number");
    }
    if (value == 0) {
        parse_fail(text, start, "mode numbers are 1-based");
    }
    return value;
}

void skip_space(std::string_view text, std::size_t &pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
}

}  // namespace

Permutation Permutation::parse(std::string_view text, std::optional<std::size_t> num_modes) {
    std::size_t pos = 0;
    skip_space(text, pos);
    if (pos == text.size()) {
        parse_fail(text, pos, "empty input");
    }

    if (text[pos] == '[') {
        ++pos;
        std::vector<std::size_t> one_line;
        skip_space(text, pos);
        while (pos < text.size() && text[pos] != ']') {
            one_line.push_back(read_number(text, pos));
            skip_space(text, pos);
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                skip_space(text, pos);
            }
        }
        if (pos == text.size()) {
            parse_fail(text, pos, "missing ']'");
        }
        ++pos;
        skip_space(text, pos);
        if (pos != text.size()) {
            parse_fail(text, pos, "trailing characters");
        }
        if (num_modes && *num_modes != one_line.size()) {
            parse_fail(text, 0, "expected " + std::to_string(*num_modes) + " entries");
        }
        return from_one_line(one_line);
    }

    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> element_pos;
    std::size_t largest = 0;
    while (pos < text.size()) {
        if (text[pos] != '(') {
            parse_fail(text, pos, "expected '('");
        }
        ++pos;
        std::vector<std::size_t> cycle;
        skip_space(text, pos);
        while (pos < text.size() && text[pos] != ')') {
            std::size_t at = pos;
            std::size_t mode = read_number(text, pos);
            for (const auto &c : cycles) {
                if (std::find(c.begin(), c.end(), mode) != c.end()) {
                    parse_fail(text, at, "repeated element " + std::to_string(mode));
                }
            }
            if (std::find(cycle.begin(), cycle.end(), mode) != cycle.end()) {
                parse_fail(text, at, "repeated element " + std::to_string(mode));
            }
            if (num_modes && mode > *num_modes) {
                parse_fail(text, at, "mode " + std::to_string(mode) + " exceeds n=" + std::to_string(*num_modes));
            }
            largest = std::max(largest, mode);
            cycle.push_back(mode);
            skip_space(text, pos);
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                skip_space(text, pos);
            }
        }
        if (pos == text.size()) {
            parse_fail(text, pos, "missing ')'");
        }
        ++pos;
        cycles.push_back(std::move(cycle));
        skip_space(text, pos);
    }

    std::size_t n = num_modes.value_or(largest);
    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), 0);
    for (const auto &cycle : cycles) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            image[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
        }
    }
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t j = 0; j < image_.size(); ++j) {
        inv[image_[j]] = j;
    }
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t j = 0; j < image_.size(); ++j) {
        if (image_[j] != j) {
            return false;
        }
    }
    return true;
}

std::string Permutation::to_cycle_string() const {
    std::string out;
    for (const auto &cycle : cycle_decompose(*this).cycles) {
        if (cycle.size() == 1) {
            continue;
        }
        out += '(';
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) {
                out += ' ';
            }
            out += std::to_string(cycle[i] + 1);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::vector<std::size_t> Permutation::one_line() const {
    std::vector<std::size_t> out;
    out.reserve(image_.size());
    for (std::size_t k : image_) {
        out.push_back(k + 1);
    }
    return out;
}

std::uint64_t CycleDecomposition::order() const {
    std::uint64_t out = 1;
    for (const auto &c : cycles) {
        out = std::lcm(out, static_cast<std::uint64_t>(c.size()));
    }
    return out;
}

std::string CycleDecomposition::to_string() const {
    std::string out;
    for (const auto &cycle : cycles) {
        out += '(';
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i) {
                out += ' ';
            }
            out += std::to_string(cycle[i] + 1);
        }
        out += ')';
    }
    return out;
}

CycleDecomposition cycle_decompose(const Permutation &p) {
    CycleDecomposition out;
    std::vector<bool> visited(p.size(), false);
    // Scanning modes in increasing order starts each cycle at its smallest
    // element and emits cycles sorted by that element.
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (visited[start]) {
            continue;
        }
        std::vector<std::size_t> cycle;
        std::size_t j = start;
        while (!visited[j]) {
            visited[j] = true;
            cycle.push_back(j);
            j = p(j);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

ComplexMatrix operator_matrix(const Permutation &p) {
    ComplexMatrix m(p.size(), p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        m(j, p(j)) = 1.0;
    }
    return m;
}

bool is_invariant(const Permutation &p, const ModeOccupation &r) {
    if (p.size() != r.num_modes()) {
        throw std::invalid_argument("permutation acts on " + std::to_string(p.size()) + " modes but occupation has " +
                                    std::to_string(r.num_modes()));
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (r[p(j)] != r[j]) {
            return false;
        }
    }
    return true;
}

EigenStructure eigenstructure(const Permutation &p) {
    const std::size_t n = p.size();
    EigenStructure out;
    out.eigenvectors = ComplexMatrix(n, n);
    out.eigenvalues.reserve(n);
    out.column_origin.reserve(n);

    const auto decomposition = cycle_decompose(p);
    std::size_t column = 0;
    for (std::size_t c = 0; c < decomposition.cycles.size(); ++c) {
        const auto &cycle = decomposition.cycles[c];
        const auto len = static_cast<std::int64_t>(cycle.size());
        const double norm = 1.0 / std::sqrt(static_cast<double>(len));
        for (std::int64_t k = 0; k < len; ++k) {
            out.eigenvalues.emplace_back(k, len);
            out.column_origin.push_back({c, static_cast<std::size_t>(k)});
            for (std::int64_t j = 0; j < len; ++j) {
                // lambda^j, reduced exactly before going to floating point.
                Complex phase = RootOfUnity(k * j, len).to_complex();
                out.eigenvectors(cycle[static_cast<std::size_t>(j)], column) = phase * norm;
            }
            ++column;
        }
    }
    return out;
}

ComplexMatrix eigenvalue_matrix(std::span<const RootOfUnity> eigenvalues) {
    std::vector<Complex> diag;
    diag.reserve(eigenvalues.size());
    for (const auto &lambda : eigenvalues) {
        diag.push_back(lambda.to_complex());
    }
    return ComplexMatrix::diagonal(diag);
}

ComplexMatrix local_phase_matrix(const Permutation &p, const ComplexMatrix &theta) {
    if (theta.rows() != p.size() || !theta.is_square()) {
        throw std::invalid_argument("theta must be " + std::to_string(p.size()) + "x" + std::to_string(p.size()));
    }
    if (!theta.is_diagonal()) {
        throw std::invalid_argument("theta must be diagonal");
    }
    const ComplexMatrix perm = operator_matrix(p);
    return perm * theta * perm.adjoint() * theta.adjoint();
}

double symmetry_residual(const Permutation &p, const ComplexMatrix &u, const ComplexMatrix &theta,
                         std::span<const RootOfUnity> eigenvalues) {
    const std::size_t n = p.size();
    if (u.rows() != n || u.cols() != n || eigenvalues.size() != n) {
        throw std::invalid_argument("symmetry_residual: dimension mismatch");
    }
    const ComplexMatrix z = local_phase_matrix(p, theta);
    return max_abs_diff(operator_matrix(p) * u, z * u * eigenvalue_matrix(eigenvalues));
}

}  // namespace supplaw

// Copyright 2026 The lpcsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Shared error types, checked integer arithmetic and cooperative deadlines.

#ifndef LPCSP_COMMON_HPP
#define LPCSP_COMMON_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpcsp {

using Value = std::int64_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed model: dangling ids, overflow, unbound variables. Never
/// used to report that a well-formed problem has no solution.
class StructuralError : public Error {
public:
    using Error::Error;
};

struct SourcePos {
    int line = 1;
    int column = 1;
};

class ParseError : public Error {
public:
    enum class Kind { syntax, arity, range_restriction, semantic };

    ParseError(Kind kind, SourcePos pos, std::string message,
               std::vector<std::string> expected = {}, std::string variable = {})
        : Error(format(pos, message, expected)),
          kind_(kind),
          pos_(pos),
          expected_(std::move(expected)),
          variable_(std::move(variable)) {}

    Kind kind() const noexcept { return kind_; }
    SourcePos position() const noexcept { return pos_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    /// Offending variable for range-restriction errors.
    const std::string& variable() const noexcept { return variable_; }

private:
    static std::string format(SourcePos pos, const std::string& msg,
                              const std::vector<std::string>& expected) {
        std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg;
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) out += ", ";
                out += expected[i];
            }
            out += ")";
        }
        return out;
    }

    Kind kind_;
    SourcePos pos_;
    std::vector<std::string> expected_;
    std::string variable_;
};

namespace checked {

inline Value add(Value a, Value b) {
    Value r;
    if (__builtin_add_overflow(a, b, &r)) throw StructuralError("integer overflow in addition");
    return r;
}

inline Value sub(Value a, Value b) {
    Value r;
    if (__builtin_sub_overflow(a, b, &r)) throw StructuralError("integer overflow in subtraction");
    return r;
}

inline Value mul(Value a, Value b) {
    Value r;
    if (__builtin_mul_overflow(a, b, &r)) throw StructuralError("integer overflow in multiplication");
    return r;
}

inline Value abs(Value a) {
    if (a == INT64_MIN) throw StructuralError("integer overflow in abs");
    return a < 0 ? -a : a;
}

inline Value neg(Value a) { return sub(0, a); }

} // namespace checked

inline Value floor_div(Value a, Value b) {
    Value q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Value ceil_div(Value a, Value b) {
    Value q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

enum class SearchStatus { complete, limit_reached, timeout };

/// Wall-clock deadline polled by search loops.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;
    explicit Deadline(Clock::time_point at) : at_(at) {}

    static Deadline after(double seconds) {
        return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(seconds)));
    }
    static Deadline none() { return Deadline(); }

    bool expired() const { return at_ && Clock::now() >= *at_; }
    bool bounded() const { return at_.has_value(); }

private:
    std::optional<Clock::time_point> at_;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace lpcsp

#endif // LPCSP_COMMON_HPP

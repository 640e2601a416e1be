#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pai {

// Cells whose defining denominator is zero are carried as a distinguished
// missing marker, never as 0 or -1. NaN is that marker; all arithmetic on
// values checks is_missing() first, so a NaN can only mean "missing".
inline double missing() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

enum class DiagonalStrategy { zero, iterative, all_papers, intl_papers, intra_papers };

enum class Method { m1, m2, m3, m4, m5, m6, m7, salton };

enum class NormalizeMode { none, power, linear };

inline std::string_view to_string(DiagonalStrategy s) {
    switch (s) {
        case DiagonalStrategy::zero: return "zero";
        case DiagonalStrategy::iterative: return "iterative";
        case DiagonalStrategy::all_papers: return "all";
        case DiagonalStrategy::intl_papers: return "intl";
        case DiagonalStrategy::intra_papers: return "intra";
    }
    return "?";
}

inline std::optional<DiagonalStrategy> parse_diagonal_strategy(std::string_view s) {
    if (s == "zero") return DiagonalStrategy::zero;
    if (s == "iterative") return DiagonalStrategy::iterative;
    if (s == "all" || s == "all_papers") return DiagonalStrategy::all_papers;
    if (s == "intl" || s == "intl_papers") return DiagonalStrategy::intl_papers;
    if (s == "intra" || s == "intra_papers") return DiagonalStrategy::intra_papers;
    return std::nullopt;
}

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::m1: return "m1";
        case Method::m2: return "m2";
        case Method::m3: return "m3";
        case Method::m4: return "m4";
        case Method::m5: return "m5";
        case Method::m6: return "m6";
        case Method::m7: return "m7";
        case Method::salton: return "salton";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "m1") return Method::m1;
    if (s == "m2") return Method::m2;
    if (s == "m3") return Method::m3;
    if (s == "m4") return Method::m4;
    if (s == "m5") return Method::m5;
    if (s == "m6") return Method::m6;
    if (s == "m7") return Method::m7;
    if (s == "salton") return Method::salton;
    return std::nullopt;
}

// The overlapping family binds each method id to one diagonal strategy.
inline std::optional<Method> overlapping_method_for(DiagonalStrategy s) {
    switch (s) {
        case DiagonalStrategy::zero: return Method::m2;
        case DiagonalStrategy::iterative: return Method::m3;
        case DiagonalStrategy::all_papers: return Method::m4;
        case DiagonalStrategy::intl_papers: return Method::m5;
        case DiagonalStrategy::intra_papers: return Method::m6;
    }
    return std::nullopt;
}

inline std::string_view to_string(NormalizeMode m) {
    switch (m) {
        case NormalizeMode::none: return "none";
        case NormalizeMode::power: return "power";
        case NormalizeMode::linear: return "linear";
    }
    return "?";
}

inline std::optional<NormalizeMode> parse_normalize_mode(std::string_view s) {
    if (s == "none") return NormalizeMode::none;
    if (s == "power") return NormalizeMode::power;
    if (s == "linear") return NormalizeMode::linear;
    return std::nullopt;
}

// Misconfigured inputs: mismatched labels, wrong diagonal strategy, bad flags.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed configuration, unusable data (zero margins, unknown countries).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input bytes; carries the 1-based line number.
struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pai

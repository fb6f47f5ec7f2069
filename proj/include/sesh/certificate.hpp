#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sesh/seshadri.hpp"

namespace sesh {

// Machine-checkable record of one bracket computation: input echo,
// normalized field and point, the per-degree multiplicity table with
// witnesses, and the result. Verification replays every cheap invariant
// (witness degrees and orders through the direct evaluation path, ratio
// arithmetic, bound comparisons, the degree bound) without re-running the
// kernel engine. Serialization is deterministic field-for-field; rationals
// travel as "p/q" strings so nothing is rounded.
struct Certificate {
    int schema_version = 1;

    // input echo (raw CLI strings)
    std::optional<std::string> input_minpoly;
    std::array<std::string, 3> input_point;
    std::string input_gamma;
    int bundle_degree = 1;

    // normalized data
    std::vector<Rational> field_minpoly; // constant first, monic
    std::array<std::vector<Rational>, 3> point_coords;
    int chart = 0;
    int alpha = 1;

    Rational gamma;
    int ample_shift_r = -2;
    long chi = 1;

    long degree_bound_d = 0;
    long degree_bound_m = 0;
    long enumeration_degree = 0;
    Rational quadratic_value;

    struct TableRow {
        int degree = 0;
        int m_max = 0;
        long kernel_dim = 0;
        std::optional<std::string> witness;
    };
    std::vector<TableRow> table;

    ResultKind kind = ResultKind::Interval;
    Rational value;
    Rational lower, upper_candidate, upper_sq_bound;
    std::optional<std::string> witness;
    int witness_degree = 0;
    int witness_order = 0;

    std::string toolchain;
};

Certificate make_certificate(const std::optional<std::string>& input_minpoly,
                             const std::array<std::string, 3>& input_point,
                             const std::string& input_gamma, const BracketParams& params,
                             const ClosedPoint& x, const SeshadriResult& result);

std::string certificate_to_text(const Certificate& c); // JSON document
Certificate certificate_from_text(const std::string& text); // throws ParseError

// nullopt on success, otherwise the first failing check.
std::optional<std::string> verify_certificate(const Certificate& c);

std::string toolchain_fingerprint();

} // namespace sesh

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hbnqm {

/// One substitution or vacancy: a species occupying a boron or nitrogen
/// site. species is an element symbol, "V" for a vacancy, or a literal
/// "C-"-prefixed carbon-cluster form (e.g. "C-V"), which is accepted
/// verbatim rather than interpreted.
struct LabelConstituent {
    std::string species;
    char site = 'B'; // 'B' or 'N'

    bool operator==(const LabelConstituent&) const = default;
};

/// Parsed defect name, e.g. "Ge_NV_N", "P_BV_B^{-1}", "C_BC_NC_BC_N-2".
///
/// Grammar (whitespace and underscores are separators and carry no meaning):
///   Label     := Constituent+ Charge? Conformer?
///   Constituent := Species Site
///   Species   := ElementSymbol | "V" | "C-" (ElementSymbol | "V")
///   Site      := "B" | "N"
///   Charge    := "^{" Sign Digits "}" | "^" Sign Digits | "+" Digits
///   Conformer := "-" Digits
/// A bare "-n" tail is a conformer index, never a negative charge; negative
/// charges always use the caret form.
struct DefectLabel {
    std::vector<LabelConstituent> constituents;
    int charge = 0;
    std::optional<int> conformer;

    /// Canonical serialization; parse(str()) round-trips exactly.
    std::string str() const;

    bool operator==(const DefectLabel&) const = default;
};

/// Parse a defect label. Errors name the offending token and its byte
/// offset in the input.
DefectLabel parse_defect_label(std::string_view text);

} // namespace hbnqm

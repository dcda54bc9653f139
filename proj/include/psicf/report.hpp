#pragma once

// Rendering of engine records to JSON and CSV.  Both formats carry the same
// records; every decimal string is the correctly rounded midpoint of a
// certified enclosure, with the enclosure width emitted next to it, and big
// integers are always decimal strings (never floats).  JSON output is a
// single object or an array of records, newline-terminated, with fixed key
// order so identical inputs give byte-identical bytes.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psicf/extremal.hpp"
#include "psicf/psi.hpp"

namespace psicf {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv };
OutputFormat parse_format(std::string_view text);  // "json" | "csv"

struct RenderOptions {
    OutputFormat format = OutputFormat::json;
    int precision = 30;  // fractional decimal digits, in [6, 200]
};

// Correctly rounded decimal of an exact surd / of an enclosure midpoint.
std::string decimal_of(const QuadraticSurd& x, int precision);
std::string decimal_of(const RationalInterval& iv, int precision);

Json surd_fields(const QuadraticSurd& x);  // {a, b, c, d} as decimal strings

std::string render_psi(const PsiValue& v, const RenderOptions& opt);
std::string render_convergents(const std::vector<Convergent>& cs, const RenderOptions& opt);
std::string render_witnesses(const std::vector<GapWitness>& ws, const RenderOptions& opt);
std::string render_flips(const std::vector<SignFlip>& fs, const RenderOptions& opt);
std::string render_reciprocal(const std::optional<ReciprocalWitness>& w,
                              const RenderOptions& opt);
std::string render_coincidences(const std::vector<CoincidenceRecord>& rs,
                                const RenderOptions& opt);

// Construction + sweep report: always JSON (one object, spec'd key order).
std::string render_extremal(const Construction& c, const PiiReport& pii, int precision);

}  // namespace psicf

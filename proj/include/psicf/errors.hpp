#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psicf {

// Every failure mode the library can signal.  The CLI maps these onto its
// exit-code contract (parse -> 2, domain -> 3, equivalent pair -> 4, the
// rest -> 1); library users can switch on the code directly.
enum class Errc {
    zero_denominator,
    negative_radicand,
    division_by_zero,
    mixed_radicand,
    rational_input,
    horizon_exceeded,
    precondition_violated,
    equivalent_pair,
    domain_error,
    precision_exhausted,
    search_budget_exceeded,
    parse_error,
    internal_error,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

constexpr std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::zero_denominator: return "zero_denominator";
        case Errc::negative_radicand: return "negative_radicand";
        case Errc::division_by_zero: return "division_by_zero";
        case Errc::mixed_radicand: return "mixed_radicand";
        case Errc::rational_input: return "rational_input";
        case Errc::horizon_exceeded: return "horizon_exceeded";
        case Errc::precondition_violated: return "precondition_violated";
        case Errc::equivalent_pair: return "equivalent_pair";
        case Errc::domain_error: return "domain_error";
        case Errc::precision_exhausted: return "precision_exhausted";
        case Errc::search_budget_exceeded: return "search_budget_exceeded";
        case Errc::parse_error: return "parse_error";
        case Errc::internal_error: return "internal_error";
    }
    return "unknown";
}

}  // namespace psicf

#pragma once
#include <string>

#include "afspin/spin.hpp"
#include "json.hpp"

namespace afspin {

// Stable machine-readable form of a spin report. Integers that fit in 64
// bits are emitted as JSON numbers, larger ones as decimal strings.
nlohmann::ordered_json spin_report_json(const SpinReport& r);

// Human-readable one-field-per-line form.
std::string spin_report_text(const SpinReport& r);

}  // namespace afspin

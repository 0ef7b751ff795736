#pragma once
#include <stdexcept>
#include <string>

namespace afspin {

// Error kinds follow the pipeline stages so callers can map failures to exit
// codes without matching on message text.
enum class errc {
  usage,
  parse,
  validate,
  collect_budget,
  inconsistent,
  series,
  holonomy,
  spin,
  intlin,
};

struct error : std::runtime_error {
  errc kind;
  error(errc k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(errc k, const std::string& msg) {
  throw error(k, msg);
}

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::usage: return "usage";
    case errc::parse: return "parse";
    case errc::validate: return "validate";
    case errc::collect_budget: return "collect-budget";
    case errc::inconsistent: return "inconsistent";
    case errc::series: return "series";
    case errc::holonomy: return "holonomy";
    case errc::spin: return "spin";
    case errc::intlin: return "intlin";
  }
  return "unknown";
}

}  // namespace afspin

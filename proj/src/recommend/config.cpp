#include "structrec/recommend/config.hpp"

#include <stdexcept>

namespace structrec::recommend {

void EngineConfig::validate() const {
  if (eta1 < 1) throw std::invalid_argument("eta1 must be at least 1");
  if (eta2 < 1 || eta2 > eta1) throw std::invalid_argument("eta2 must be in [1, eta1]");
  if (!(tau1 > 0.0 && tau1 <= 1.0)) throw std::invalid_argument("tau1 must be in (0, 1]");
  if (!(tau2 > 1.0)) throw std::invalid_argument("tau2 must be greater than 1");
  if (!(tau3 > 0.0 && tau3 <= 1.0)) throw std::invalid_argument("tau3 must be in (0, 1]");
  if (topk < 1) throw std::invalid_argument("topk must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
}

std::string to_string(UnionMode m) { return m == UnionMode::AsWritten ? "as-written" : "uniform"; }

UnionMode parse_union_mode(const std::string& s) {
  if (s == "as-written") return UnionMode::AsWritten;
  if (s == "uniform") return UnionMode::Uniform;
  throw std::invalid_argument("unknown union mode '" + s + "'");
}

}  // namespace structrec::recommend

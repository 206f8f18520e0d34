#include "cyclesvd/series.hpp"

#include <cmath>
#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

Series::Series(std::vector<double> values, std::string name,
               std::optional<std::vector<double>> timestamps)
    : values_(std::move(values)), timestamps_(std::move(timestamps)), name_(std::move(name)) {
  if (values_.size() < 2) {
    throw DataError("series '" + name_ + "' needs at least 2 values, got " +
                    std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("series '" + name_ + "' has a non-finite value at index " + std::to_string(i));
    }
  }
  if (timestamps_) {
    const auto& ts = *timestamps_;
    if (ts.size() != values_.size()) {
      std::ostringstream msg;
      msg << "series '" << name_ << "': " << ts.size() << " timestamps for " << values_.size()
          << " values";
      throw DataError(msg.str());
    }
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (!(ts[i] > ts[i - 1])) {
        throw DataError("series '" + name_ + "': timestamps not strictly increasing at index " +
                        std::to_string(i));
      }
    }
  }
}

Series scale(const Series& s, double alpha) {
  std::vector<double> v(s.values().begin(), s.values().end());
  for (double& x : v) x *= alpha;
  return Series(std::move(v), s.name(), s.timestamps());
}

}  // namespace cyclesvd

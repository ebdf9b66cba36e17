#pragma once

#include "availkit/modelfile.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace availkit::casestudy {

/// Solar array of the DFH-3 satellite as a series of parallel stages:
/// electric detonators (ED), cutting knife (CK), starting springs (SS),
/// hinge bearings (HB) and locking hinges (HL). Duplicated units are
/// independent components sharing a rate pair.
inline constexpr std::string_view kDfh3Abd = R"(# DFH-3 solar array availability block diagram.
# Steady-state availability is exactly 40/343.
model "dfh3-abd"
component ED1 lambda=0.1 mu=0.3
component ED2 lambda=0.1 mu=0.3
component CK lambda=0.2 mu=0.5
component SS1 lambda=0.3 mu=0.4
component SS2 lambda=0.3 mu=0.4
component HB1 lambda=0.7 mu=0.8
component HB2 lambda=0.7 mu=0.8
component HL1 lambda=0.5 mu=0.5
component HL2 lambda=0.5 mu=0.5
abd series {
  parallel {
    unit ED1;
    unit ED2
  };
  parallel {
    unit CK
  };
  parallel {
    unit SS1;
    unit SS2
  };
  parallel {
    unit HB1
  };
  parallel {
    unit HB2
  };
  parallel {
    unit HL1;
    unit HL2
  }
}
)";

/// Unavailability fault tree of the same solar array over 14 mechanical
/// fault events. The rates are illustrative: x_i fails at rate i/100 and is
/// repaired at rate 1/2.
inline constexpr std::string_view kDfh3Ft = R"(# DFH-3 solar array unavailability fault tree.
# Example rates: x<i> has lambda = i/100, mu = 1/2.
model "dfh3-ft"
component x1 lambda=0.01 mu=0.5
component x2 lambda=0.02 mu=0.5
component x3 lambda=0.03 mu=0.5
component x4 lambda=0.04 mu=0.5
component x5 lambda=0.05 mu=0.5
component x6 lambda=0.06 mu=0.5
component x7 lambda=0.07 mu=0.5
component x8 lambda=0.08 mu=0.5
component x9 lambda=0.09 mu=0.5
component x10 lambda=0.1 mu=0.5
component x11 lambda=0.11 mu=0.5
component x12 lambda=0.12 mu=0.5
component x13 lambda=0.13 mu=0.5
component x14 lambda=0.14 mu=0.5
ft or {
  or {
    basic x1;
    basic x2;
    basic x3;
    basic x4
  };
  and {
    basic x5;
    basic x6
  };
  or {
    basic x7;
    basic x8;
    basic x9;
    basic x10;
    basic x11;
    basic x12;
    basic x13;
    basic x14
  }
}
)";

inline std::vector<std::string_view> names() { return {"dfh3-abd", "dfh3-ft"}; }

/// Fixture text for a built-in case study, if the name is known.
inline std::optional<std::string_view> fixture(std::string_view name) {
  if (name == "dfh3-abd") return kDfh3Abd;
  if (name == "dfh3-ft") return kDfh3Ft;
  return std::nullopt;
}

inline SystemModel dfh3_abd() { return modelfile::parse_model(kDfh3Abd); }
inline SystemModel dfh3_ft() { return modelfile::parse_model(kDfh3Ft); }

}  // namespace availkit::casestudy

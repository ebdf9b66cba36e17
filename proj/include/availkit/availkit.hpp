#pragma once

#include "availkit/analytic.hpp"
#include "availkit/casestudy.hpp"
#include "availkit/cutsets.hpp"
#include "availkit/model.hpp"
#include "availkit/modelfile.hpp"
#include "availkit/oracle.hpp"
#include "availkit/probability.hpp"
#include "availkit/rational.hpp"
#include "availkit/structure.hpp"

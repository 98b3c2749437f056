#pragma once

#include "descsys/errors.hpp"
#include "descsys/rational.hpp"
#include "descsys/matrix.hpp"
#include "descsys/subspace.hpp"
#include "descsys/pencil.hpp"
#include "descsys/solver.hpp"
#include "descsys/reachability.hpp"
#include "descsys/controllability.hpp"

#pragma once

#include "bks/grassmann/ascent.hpp"
#include "bks/grassmann/factors.hpp"
#include "bks/grassmann/hooi.hpp"
#include "bks/grassmann/hosvd.hpp"
#include "bks/grassmann/objective.hpp"
#include "bks/grassmann/result.hpp"
#include "bks/grassmann/solver.hpp"

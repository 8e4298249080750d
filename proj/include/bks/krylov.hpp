#pragma once

#include "bks/krylov/block_basis.hpp"
#include "bks/krylov/block_step.hpp"
#include "bks/krylov/expand.hpp"
#include "bks/krylov/expansion_plan.hpp"

#pragma once

#include "bks/diagnostics.hpp"
#include "bks/grassmann.hpp"
#include "bks/krylov.hpp"
#include "bks/krylov_schur.hpp"
#include "bks/linalg.hpp"
#include "bks/synthetic.hpp"
#include "bks/tensor.hpp"

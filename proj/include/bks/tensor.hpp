#pragma once

#include "bks/tensor/contract.hpp"
#include "bks/tensor/dense_tensor.hpp"
#include "bks/tensor/multilinear.hpp"
#include "bks/tensor/normalize.hpp"
#include "bks/tensor/parallel.hpp"
#include "bks/tensor/sparse_tensor.hpp"
#include "bks/tensor/symmetry.hpp"
#include "bks/tensor/tns_io.hpp"
#include "bks/tensor/ttm.hpp"
#include "bks/tensor/unfold.hpp"

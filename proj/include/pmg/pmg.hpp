#ifndef PMG_PMG_HPP
#define PMG_PMG_HPP

#include "pmg/assembly.hpp"
#include "pmg/dense.hpp"
#include "pmg/dg_space.hpp"
#include "pmg/experiments.hpp"
#include "pmg/iteration.hpp"
#include "pmg/krylov.hpp"
#include "pmg/legendre.hpp"
#include "pmg/linalg.hpp"
#include "pmg/matrix_market.hpp"
#include "pmg/mesh.hpp"
#include "pmg/multigrid.hpp"
#include "pmg/smoother.hpp"
#include "pmg/transfer.hpp"

#endif

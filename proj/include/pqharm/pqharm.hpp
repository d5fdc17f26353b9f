#ifndef PQHARM_PQHARM_HPP
#define PQHARM_PQHARM_HPP

#include "pqharm/classcheck.hpp"
#include "pqharm/errors.hpp"
#include "pqharm/grid.hpp"
#include "pqharm/operator.hpp"
#include "pqharm/pq.hpp"
#include "pqharm/quadrature.hpp"
#include "pqharm/series.hpp"
#include "pqharm/verify.hpp"

#endif  // PQHARM_PQHARM_HPP

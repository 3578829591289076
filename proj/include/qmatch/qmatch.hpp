#ifndef QMATCH_QMATCH_HPP
#define QMATCH_QMATCH_HPP

#include "qmatch/bipartite.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/feasibility.hpp"
#include "qmatch/oracle.hpp"
#include "qmatch/quasi_matching.hpp"
#include "qmatch/routing.hpp"

#endif  // QMATCH_QMATCH_HPP

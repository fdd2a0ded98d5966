#ifndef LATCOUNT_LATCOUNT_HPP
#define LATCOUNT_LATCOUNT_HPP

#include "latcount/count.hpp"
#include "latcount/dual.hpp"
#include "latcount/errors.hpp"
#include "latcount/instance.hpp"
#include "latcount/laurent.hpp"
#include "latcount/matrix.hpp"
#include "latcount/numeric.hpp"
#include "latcount/oracle.hpp"
#include "latcount/primal.hpp"
#include "latcount/simplex.hpp"
#include "latcount/structure.hpp"
#include "latcount/table_io.hpp"
#include "latcount/univariate.hpp"

#endif

#ifndef PRIMOVER_PRIMOVER_HPP
#define PRIMOVER_PRIMOVER_HPP

#include "primover/arith.hpp"
#include "primover/bfile.hpp"
#include "primover/classify.hpp"
#include "primover/cosets.hpp"
#include "primover/cyclotomic.hpp"
#include "primover/factor.hpp"
#include "primover/io.hpp"
#include "primover/orders.hpp"
#include "primover/search.hpp"

#endif

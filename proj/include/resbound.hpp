#ifndef RESBOUND_HPP
#define RESBOUND_HPP

#include "resbound/bounds.hpp"
#include "resbound/errors.hpp"
#include "resbound/green.hpp"
#include "resbound/interval_union.hpp"
#include "resbound/invimage.hpp"
#include "resbound/io.hpp"
#include "resbound/minres.hpp"
#include "resbound/polynomial.hpp"
#include "resbound/roots.hpp"

#endif

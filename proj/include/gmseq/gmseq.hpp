#pragma once

#include "coefficient.hpp"
#include "error.hpp"
#include "groebner.hpp"
#include "hilbert_series.hpp"
#include "ideal.hpp"
#include "localization.hpp"
#include "module.hpp"
#include "monomial.hpp"
#include "monomial_ideal.hpp"
#include "multiplicity.hpp"
#include "parallel.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "reduction.hpp"

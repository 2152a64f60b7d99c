#ifndef ASNUM_ASNUM_HPP
#define ASNUM_ASNUM_HPP

#include "artin_schreier.hpp"
#include "bounds.hpp"
#include "derham.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "fields.hpp"
#include "fraction.hpp"
#include "gf_table.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "parser.hpp"
#include "quintic.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "resultant.hpp"
#include "survey.hpp"
#include "upoly.hpp"
#include "zeta.hpp"

#endif

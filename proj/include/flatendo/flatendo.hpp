#pragma once

#include "rational.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "linalg.hpp"
#include "smith.hpp"
#include "affine.hpp"
#include "group.hpp"
#include "io.hpp"
#include "endo.hpp"
#include "quotient.hpp"
#include "obstruction.hpp"
#include "report.hpp"
#include "paper_verify.hpp"
#include "commands.hpp"

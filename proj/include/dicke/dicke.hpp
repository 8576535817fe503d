#pragma once

// Umbrella header for the library. The dense brute-force oracle
// (dicke/dense_oracle.hpp, needs Eigen) and the CLI front end
// (dicke/cli.hpp, needs CLI11) are intentionally not pulled in here.

#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/tridiagonal.hpp"
#include "dicke/sector_ed.hpp"
#include "dicke/gp.hpp"
#include "dicke/crit.hpp"
#include "dicke/table.hpp"
#include "dicke/svg.hpp"
#include "dicke/config.hpp"
#include "dicke/commands.hpp"

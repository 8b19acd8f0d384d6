#pragma once

#include "error.hpp"
#include "qz.hpp"
#include "group.hpp"
#include "smith.hpp"
#include "abelian.hpp"
#include "gmodule.hpp"
#include "cohomology.hpp"
#include "pivotal.hpp"
#include "ty.hpp"
#include "picard.hpp"
#include "io.hpp"
#include "cli.hpp"

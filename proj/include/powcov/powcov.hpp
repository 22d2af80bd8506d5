#pragma once

#include "cache.hpp"
#include "catalog.hpp"
#include "construct.hpp"
#include "core.hpp"
#include "cover.hpp"
#include "descriptor.hpp"
#include "dihedral.hpp"
#include "element_set.hpp"
#include "error.hpp"
#include "group.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "profile.hpp"
#include "sweep.hpp"
#include "verify.hpp"

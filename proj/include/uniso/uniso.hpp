#pragma once

#include "uniso/arcs.hpp"
#include "uniso/bitset.hpp"
#include "uniso/bounds.hpp"
#include "uniso/brute_force.hpp"
#include "uniso/design.hpp"
#include "uniso/errors.hpp"
#include "uniso/finite_field.hpp"
#include "uniso/heuristic.hpp"
#include "uniso/io.hpp"
#include "uniso/iso_graph.hpp"
#include "uniso/lower_bounds.hpp"
#include "uniso/projective_plane.hpp"
#include "uniso/rational.hpp"
#include "uniso/unitals.hpp"
#include "uniso/version.hpp"

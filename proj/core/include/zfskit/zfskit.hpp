#pragma once

#include "zfskit/decontamination.hpp"
#include "zfskit/density.hpp"
#include "zfskit/engine.hpp"
#include "zfskit/error.hpp"
#include "zfskit/format.hpp"
#include "zfskit/gaussian_orbital.hpp"
#include "zfskit/grid.hpp"
#include "zfskit/io.hpp"
#include "zfskit/oracle.hpp"
#include "zfskit/orbital_set.hpp"
#include "zfskit/spin_tensor.hpp"
#include "zfskit/threads.hpp"
#include "zfskit/units.hpp"

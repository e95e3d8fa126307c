#ifndef QWELL_QWELL_HPP
#define QWELL_QWELL_HPP

#include "qwell/errors.hpp"
#include "qwell/io.hpp"
#include "qwell/oracle.hpp"
#include "qwell/potential.hpp"
#include "qwell/roots.hpp"
#include "qwell/scattering.hpp"
#include "qwell/selfcheck.hpp"
#include "qwell/spectrum.hpp"
#include "qwell/sweep.hpp"

#endif  // QWELL_QWELL_HPP

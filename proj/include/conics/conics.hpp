#pragma once

#include "conics/constructions.hpp"
#include "conics/errors.hpp"
#include "conics/figures.hpp"
#include "conics/geom_kernel.hpp"
#include "conics/locus.hpp"
#include "conics/locus_io.hpp"
#include "conics/trace_io.hpp"

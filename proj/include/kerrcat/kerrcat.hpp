#pragma once
// Umbrella header: the full coherent-dyad pipeline, the Fock-space oracle,
// sweeps, and the CLI front end.

#include "kerrcat/cat.hpp"
#include "kerrcat/cli.hpp"
#include "kerrcat/coherent.hpp"
#include "kerrcat/evolution.hpp"
#include "kerrcat/fock.hpp"
#include "kerrcat/numerics.hpp"
#include "kerrcat/sweep.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "pdmom/pdmom.hpp"

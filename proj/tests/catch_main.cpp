// Builds the amalgamated Catch2 implementation (and its default main) once;
// every test binary links against this object library.
#include <catch2/catch_amalgamated.cpp>

#include <pybind11/pybind11.h>
PYBIND11_MODULE(_crochet, m) { m.doc() = "placeholder"; }

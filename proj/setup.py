import glob
import os

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("NPY_NUM_BUILD_JOBS", default=4).install()


def eigen_include():
    candidates = (
        os.environ.get("EIGEN3_INCLUDE_DIR"),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
    )
    for cand in candidates:
        if cand and os.path.isdir(cand):
            return cand
    raise RuntimeError("Eigen3 headers not found; set EIGEN3_INCLUDE_DIR")


ext = Pybind11Extension(
    "ipvem._ipvem",
    sorted(glob.glob("src/*.cpp")) + ["python/ipvem/_module.cpp"],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
    extra_compile_args=["-pthread"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

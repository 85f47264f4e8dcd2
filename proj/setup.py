import glob
import os

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    candidates = [
        os.environ.get("EIGEN3_INCLUDE_DIR"),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
        "/opt/homebrew/include/eigen3",
    ]
    for c in candidates:
        if c and os.path.isfile(os.path.join(c, "Eigen", "Dense")):
            return c
    raise RuntimeError(
        "Eigen headers not found; set EIGEN3_INCLUDE_DIR to the directory "
        "containing Eigen/Dense"
    )


sources = sorted(
    p
    for p in glob.glob("src/**/*.cpp", recursive=True)
    if not p.startswith(os.path.join("src", "python"))
) + ["src/python/bindings.cpp"]

ParallelCompile("NPY_NUM_BUILD_JOBS").install()

setup(
    packages=["qbnets"],
    package_dir={"qbnets": "python/qbnets"},
    ext_modules=[
        Pybind11Extension(
            "qbnets._qbnets",
            sources,
            include_dirs=["include", "vendor", eigen_include()],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)

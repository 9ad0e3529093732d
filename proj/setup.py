import subprocess
from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include_dirs():
    try:
        out = subprocess.check_output(
            ["pkg-config", "--cflags-only-I", "eigen3"], text=True
        )
        return [flag[2:] for flag in out.split() if flag.startswith("-I")]
    except (OSError, subprocess.CalledProcessError):
        return ["/usr/include/eigen3"]


ext = Pybind11Extension(
    "evoscope._core",
    sorted(glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=["include"] + eigen_include_dirs(),
    cxx_std=20,
)

setup(
    packages=["evoscope"],
    package_dir={"evoscope": "python/evoscope"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)

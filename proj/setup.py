from pathlib import Path

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

eigen = next(
    (p for p in ("/usr/include/eigen3", "/usr/local/include/eigen3")
     if Path(p).is_dir()),
    None,
)
if eigen is None:
    raise RuntimeError("Eigen3 headers not found")

ext = Pybind11Extension(
    "irslink._irslink",
    ["python/bindings.cpp"] + sorted(str(p) for p in Path("src").glob("*.cpp")),
    include_dirs=["include", "vendor", eigen],
    cxx_std=20,
    extra_compile_args=["-pthread"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

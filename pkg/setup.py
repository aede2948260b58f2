# Builds the compiled statevector kernels. The package still works without
# them (pure-numpy fallback is selected at import), so a failed extension
# build is not fatal for development installs: python setup.py build_ext --inplace
import numpy as np
from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "teleclone.kernels._statevec",
                sources=["src/teleclone/kernels/_statevec.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

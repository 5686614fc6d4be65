from setuptools import Extension, setup
from Cython.Build import cythonize

# Compiled statevector kernels. The extension is optional: if the build
# fails (no C compiler), the package falls back to the numpy kernels at
# import time.
extensions = [
    Extension(
        "qaoadec._kernels_c",
        ["src/qaoadec/_kernels_c.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)

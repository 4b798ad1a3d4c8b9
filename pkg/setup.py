from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fallback kernels are used at runtime
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "mnconvex._kernels",
                ["src/mnconvex/_kernels.pyx"],
                extra_compile_args=["-O2", "-fno-fast-math"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

import setuptools

setuptools.setup(
    name="anaconda.evolution.algebra.sdk",
    version="0.1.0",
    package_dir={"": "src"},
    packages=setuptools.find_namespace_packages(where="src"),
    author="Joshua C. Burt",
    description="Anaconda Evolution Algebra SDK",
    long_description="Classification, fixed points and Jacobian linearization of real evolution algebras",
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.10",
    install_requires=["numpy>=1.24", "scipy>=1.10", "pydantic>=2.0", "pydantic-settings>=2.0"],
    entry_points={"console_scripts": ["evolution-algebra=anaconda.evolution.algebra.sdk.cli:main"]},
)

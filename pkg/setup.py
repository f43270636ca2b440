from setuptools import setup, find_packages

setup(
    name="mbfun",
    version="0.1.0",
    author="Basile Simonin",
    author_email="simonin.basile@hotmail.fr",
    description="b-fonctions de Bernstein-Sato de fonctions méromorphes, bornes par résolution et idéaux multiplicateurs.",
    long_description=open("README.txt", encoding="utf-8").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    py_modules=["main", "config"],
    install_requires=[
        "numpy",
        "sympy>=1.12",
    ],
    extras_require={
        "test": ["jsonschema"],
    },
    entry_points={
        "console_scripts": [
            "mbfun = main:main",
        ],
    },
    package_data={"": ["report_schema.json"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
)

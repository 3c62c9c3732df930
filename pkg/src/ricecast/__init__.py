"""Daily price forecasting: LOCF imputation, exact-likelihood ARIMA, auto-ARIMA."""

__version__ = "0.1.0"

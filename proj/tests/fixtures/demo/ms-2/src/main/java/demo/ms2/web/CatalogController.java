package demo.ms2.web;

import demo.ms2.domain.Supplier;
import demo.ms2.domain.Warehouse;
import demo.ms2.dto.CatalogItem;
import demo.ms2.dto.PriceQuote;
import org.springframework.web.bind.annotation.*;

@RestController
@RequestMapping(value = "/api")
public class CatalogController {

    @GetMapping("/catalog/items/{id}")
    public CatalogItem item(@PathVariable String id) {
        return new CatalogItem();
    }

    @GetMapping(path = "/quotes/{id}")
    public PriceQuote quote(@PathVariable String id) {
        return new PriceQuote();
    }

    @RequestMapping(value = "/suppliers/{id}", method = RequestMethod.GET)
    public Supplier supplier(@PathVariable("id") String supplierId) {
        return new Supplier();
    }

    @GetMapping("/warehouses/{id}")
    public Warehouse warehouse(@PathVariable String id) {
        return new Warehouse();
    }
}
